#ifndef QPC_ARCHIMED_HPP
#define QPC_ARCHIMED_HPP

#include <complex>

#include "qpc/quadform.hpp"

namespace qpc {

struct ComplexEstimate {
    std::complex<double> value;
    double stderr_ = 0.0;
    u64 samples = 0;
    u64 seed = 0;
};

struct IntegralEstimate {
    double value = 0.0;
    double stderr_ = 0.0;
    u64 samples = 0;
    u64 seed = 0;
    enum class Method { Coarea, Shell } method = Method::Coarea;
    u64 degenerateSamples = 0; // coarea points where every pivot was near-singular
    double eps = 0.0;          // shell half-width (bias O(eps))
};

// Monte Carlo estimate of I(beta) = integral over [1,X]^n of e(beta f(x)).
// Bit-reproducible for fixed (seed, samples).
ComplexEstimate i_beta_mc(const QuadraticForm& form, double X, double beta, u64 samples, u64 seed);

// Level-set density of {f = t} in [1,X]^n: samples the non-pivot coordinates,
// solves the (at most quadratic) fiber equation exactly, and accumulates
// 1/|df/dx_pivot| per root in range.
IntegralEstimate singular_integral_coarea(const QuadraticForm& form, i64 t, double X, u64 samples,
                                          u64 seed);

// Independent estimator: vol{x in [1,X]^n : |f(x)-t| < eps} / (2 eps).
IntegralEstimate singular_integral_shell(const QuadraticForm& form, i64 t, double X, double eps,
                                         u64 samples, u64 seed);

} // namespace qpc

#endif
