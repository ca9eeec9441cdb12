#ifndef QPC_LOCALDENS_HPP
#define QPC_LOCALDENS_HPP

#include <complex>
#include <utility>
#include <vector>

#include "qpc/quadform.hpp"

namespace qpc {

constexpr double kDefaultEnumBudget = 1e9; // cap on phi(q)^n enumerations

// counts[r] = #{h in (units mod q)^n : f(h) = r (mod q)}. The workhorse behind
// the complete exponential sums and the p-adic unit counts.
std::vector<i64> unit_value_histogram(const QuadraticForm& form, i64 q,
                                      double budget = kDefaultEnumBudget);

// C(q,a) = sum over unit tuples h of e(f(h) a / q); requires gcd(a,q)=1.
std::complex<double> c_sum(const QuadraticForm& form, i64 q, i64 a,
                           double budget = kDefaultEnumBudget);

// B(q) = phi(q)^{-n} sum_{(a,q)=1} C(q,a) e(-a t / q). Real by conjugate
// pairing; the imaginary part is asserted to vanish.
double b_coeff(const QuadraticForm& form, i64 t, i64 q, double budget = kDefaultEnumBudget);

// #{h mod p^M : all coordinates units, f(h) = t (mod p^M)}.
i64 unit_count_padic(const QuadraticForm& form, i64 t, i64 p, int M,
                     double budget = kDefaultEnumBudget);

// #{x in F_p^n : x^T A x = t} for odd p via the classical closed form on the
// nondegenerate part; with unitConstraint, inclusion-exclusion over zeroed
// coordinate subsets. Exact.
i128 quadric_count_closed(const IntMatrix& a, i64 t, i64 p, bool unitConstraint);

struct LocalDensityReport {
    i64 p = 0;
    int M_used = 0;
    std::vector<double> partialSums; // entry m: 1 + sum_{j<=m} B(p^j)
    double chi = 0.0;
    bool stabilized = false;
    enum class Method { Enumeration, ClosedFormFp } method = Method::Enumeration;
    bool rankBelow5 = false; // decay guarantee absent; permitted but flagged
};

// chi_p via the partial-sum identity 1 + sum_{m<=M} B(p^m) =
// p^M phi(p^M)^{-n} N_M, raising M until two consecutive sums agree within
// tol. Odd p with A nonsingular mod p stop at M=1 through the closed form.
LocalDensityReport chi_p(const QuadraticForm& form, i64 t, i64 p, double tol = 1e-9,
                         double budget = kDefaultEnumBudget);

struct SeriesEstimate {
    i64 Q0 = 0;        // primes up to Q0 included
    double partial = 0; // product of the computed chi_p
    double tailBound = 0;
    double value = 0;
    double fittedDecayC = 0; // sup |chi_p - 1| p^{1.4} over the fitted range
    std::vector<std::pair<i64, double>> perPrimeFactors;
};

SeriesEstimate singular_series(const QuadraticForm& form, i64 t, double tol = 1e-9, i64 P0 = 100,
                               double budget = kDefaultEnumBudget);

// Primes p <= P0 with stabilized chi_p = 0.
std::vector<i64> obstruction_scan(const QuadraticForm& form, i64 t, i64 P0 = 100,
                                  double budget = kDefaultEnumBudget);

} // namespace qpc

#endif
