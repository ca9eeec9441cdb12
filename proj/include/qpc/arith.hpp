#ifndef QPC_ARITH_HPP
#define QPC_ARITH_HPP

#include <vector>

#include "qpc/ints.hpp"

namespace qpc {

// Sieve-built table of von Mangoldt weights up to X, with prefix sums and the
// supporting prime list. Immutable after construction.
class LambdaTable {
public:
    explicit LambdaTable(i64 X);

    i64 limit() const { return X_; }
    // Lambda(x); zero outside [1, X].
    double lambda(i64 x) const {
        return (x >= 1 && x <= X_) ? weights_[static_cast<std::size_t>(x)] : 0.0;
    }
    // psi(x) = sum_{m<=x} Lambda(m), clamped to [0, X].
    double psi(i64 x) const;

    const std::vector<i64>& primes() const { return primes_; }
    // Prime powers p^k <= X in increasing order (the support of Lambda).
    const std::vector<i64>& prime_powers() const { return prime_powers_; }

private:
    i64 X_;
    std::vector<double> weights_; // index x -> Lambda(x)
    std::vector<double> psi_;     // prefix sums
    std::vector<i64> primes_;
    std::vector<i64> prime_powers_;
};

i64 euler_phi(i64 q);

// Legendre symbol (a|p) for an odd prime p.
int legendre(i64 a, i64 p);

bool is_prime(i64 n);

// (a*b) mod m and a^e mod m without overflow.
i64 mulmod(i64 a, i64 b, i64 m);
i64 powmod(i64 a, i64 e, i64 m);

i64 gcd_i64(i64 a, i64 b);

// Distinct prime factors, ascending.
std::vector<i64> prime_factors(i64 n);

// Primes <= n, ascending.
std::vector<i64> primes_up_to(i64 n);

} // namespace qpc

#endif
