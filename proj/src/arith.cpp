#include "qpc/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "qpc/errors.hpp"

namespace qpc {

namespace {
constexpr i64 kLambdaLimit = 200'000'000; // ~1.6 GB of doubles; hard memory guard
}

LambdaTable::LambdaTable(i64 X) : X_(X) {
    if (X < 1) throw std::invalid_argument("LambdaTable: X must be >= 1");
    if (X > kLambdaLimit) throw BudgetExceeded("LambdaTable: X beyond memory budget");
    const std::size_t n = static_cast<std::size_t>(X) + 1;
    weights_.assign(n, 0.0);
    psi_.assign(n, 0.0);

    std::vector<bool> composite(n, false);
    for (i64 p = 2; p <= X; ++p) {
        if (composite[static_cast<std::size_t>(p)]) continue;
        primes_.push_back(p);
        const double logp = std::log(static_cast<double>(p));
        for (i64 q = p; q <= X; q *= p) {
            weights_[static_cast<std::size_t>(q)] = logp;
            prime_powers_.push_back(q);
            if (q > X / p) break;
        }
        for (i64 m = p * p; m <= X; m += p) composite[static_cast<std::size_t>(m)] = true;
    }
    std::sort(prime_powers_.begin(), prime_powers_.end());

    double acc = 0.0;
    for (std::size_t x = 1; x < n; ++x) {
        acc += weights_[x];
        psi_[x] = acc;
    }
}

double LambdaTable::psi(i64 x) const {
    if (x < 1) return 0.0;
    if (x > X_) x = X_;
    return psi_[static_cast<std::size_t>(x)];
}

i64 euler_phi(i64 q) {
    if (q < 1) throw std::invalid_argument("euler_phi: q must be >= 1");
    i64 result = q;
    i64 m = q;
    for (i64 p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            result -= result / p;
            while (m % p == 0) m /= p;
        }
    }
    if (m > 1) result -= result / m;
    return result;
}

i64 gcd_i64(i64 a, i64 b) { return std::gcd(a, b); }

i64 mulmod(i64 a, i64 b, i64 m) {
    return static_cast<i64>((static_cast<i128>(a) * b) % m);
}

i64 powmod(i64 a, i64 e, i64 m) {
    a %= m;
    if (a < 0) a += m;
    i64 r = 1 % m;
    while (e > 0) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

bool is_prime(i64 n) {
    if (n < 2) return false;
    for (i64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return n == p;
    }
    // deterministic Miller-Rabin for 64-bit
    i64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (i64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        i64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) { witness = false; break; }
        }
        if (witness) return false;
    }
    return true;
}

int legendre(i64 a, i64 p) {
    if (p < 3 || !is_prime(p)) throw std::invalid_argument("legendre: p must be an odd prime");
    a %= p;
    if (a < 0) a += p;
    if (a == 0) return 0;
    // Euler's criterion
    i64 e = powmod(a, (p - 1) / 2, p);
    return e == 1 ? 1 : -1;
}

std::vector<i64> prime_factors(i64 n) {
    std::vector<i64> fs;
    for (i64 p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            fs.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) fs.push_back(n);
    return fs;
}

std::vector<i64> primes_up_to(i64 n) {
    std::vector<i64> ps;
    if (n < 2) return ps;
    std::vector<bool> composite(static_cast<std::size_t>(n) + 1, false);
    for (i64 p = 2; p <= n; ++p) {
        if (composite[static_cast<std::size_t>(p)]) continue;
        ps.push_back(p);
        for (i64 m = p * p; m <= n; m += p) composite[static_cast<std::size_t>(m)] = true;
    }
    return ps;
}

} // namespace qpc
