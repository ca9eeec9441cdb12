#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qpc/arith.hpp"
#include "qpc/errors.hpp"

using namespace qpc;

namespace {

// trial-division Lambda, independent of the sieve
double lambda_oracle(i64 x) {
    if (x < 2) return 0.0;
    i64 p = 0, m = x;
    for (i64 d = 2; d * d <= m; ++d) {
        if (m % d == 0) {
            p = d;
            while (m % d == 0) m /= d;
            break;
        }
    }
    if (p == 0) return std::log(static_cast<double>(x)); // x prime
    if (m != 1) return 0.0; // second prime factor
    return std::log(static_cast<double>(p));
}

} // namespace

TEST_CASE("lambda table small values") {
    LambdaTable t(10);
    CHECK(t.lambda(1) == 0.0);
    CHECK(t.lambda(6) == 0.0);
    CHECK(t.lambda(8) == doctest::Approx(std::log(2.0)));
    CHECK(t.lambda(9) == doctest::Approx(std::log(3.0)));
    // psi(10) = 3 log 2 + 2 log 3 + log 5 + log 7 = log 2520
    CHECK(t.psi(10) == doctest::Approx(std::log(2520.0)));
    CHECK(LambdaTable(1).psi(1) == 0.0);
}

TEST_CASE("lambda table agrees with trial division up to 10^4") {
    LambdaTable t(10000);
    double psi = 0.0;
    for (i64 x = 1; x <= 10000; ++x) {
        CHECK(t.lambda(x) == doctest::Approx(lambda_oracle(x)).epsilon(1e-12));
        psi += lambda_oracle(x);
    }
    CHECK(t.psi(10000) == doctest::Approx(psi).epsilon(1e-12));
    // psi monotone
    for (i64 x = 2; x <= 10000; ++x) CHECK(t.psi(x) >= t.psi(x - 1));
}

TEST_CASE("euler phi") {
    CHECK(euler_phi(1) == 1);
    CHECK(euler_phi(8) == 4);
    CHECK(euler_phi(12) == 4);
    // sum over divisors recovers q
    for (i64 q = 1; q <= 10000; ++q) {
        i64 s = 0;
        for (i64 d = 1; d * d <= q; ++d) {
            if (q % d) continue;
            s += euler_phi(d);
            if (d != q / d) s += euler_phi(q / d);
        }
        REQUIRE(s == q);
    }
}

TEST_CASE("legendre symbol") {
    CHECK(legendre(1, 3) == 1);
    CHECK(legendre(2, 3) == -1);
    CHECK(legendre(3, 3) == 0);
    CHECK(legendre(7, 7) == 0);
    CHECK_THROWS_AS((void)legendre(1, 4), std::invalid_argument);
    CHECK_THROWS_AS((void)legendre(1, 2), std::invalid_argument);
    // multiplicativity spot check mod 13
    for (i64 a = 1; a < 13; ++a)
        for (i64 b = 1; b < 13; ++b)
            CHECK(legendre(a * b, 13) == legendre(a, 13) * legendre(b, 13));
}

TEST_CASE("prime helpers") {
    CHECK(is_prime(2));
    CHECK(is_prime(97));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(91));
    CHECK(primes_up_to(20) == std::vector<i64>{2, 3, 5, 7, 11, 13, 17, 19});
    CHECK(prime_factors(360) == std::vector<i64>{2, 3, 5});
    CHECK_THROWS_AS(LambdaTable(0), std::invalid_argument);
}
