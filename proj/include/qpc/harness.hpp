#ifndef QPC_HARNESS_HPP
#define QPC_HARNESS_HPP

#include <optional>
#include <string>
#include <vector>

#include "qpc/archimed.hpp"
#include "qpc/localdens.hpp"
#include "qpc/quadform.hpp"

namespace qpc {

// Weighted count N_{f,t}(X) = sum over f(x)=t, 1<=x<=X of prod Lambda(x_j).
// Enumerates prime-power tuples; the innermost variable is solved from the
// quadratic fiber equation instead of scanned, so the work is
// (#prime powers)^(n-1) fiber solves.
double count_exact(const QuadraticForm& form, i64 t, i64 X, int threads = 0,
                   double budget = 1e10);

// Diagonal fast path: value-histogram convolution with a middle split.
double count_diagonal(const std::vector<i64>& coeffs, i64 t, i64 X);

struct PredictOptions {
    double tol = 1e-3;
    u64 samples = 1'000'000;
    u64 seed = 42;
    i64 seriesPrimeLimit = 100;
    int threads = 0;
    double countBudget = 1e10;
    bool wantExact = true;
};

struct PredictionReport {
    SeriesEstimate series;
    IntegralEstimate integral;
    double mainTerm = 0.0;
    std::optional<double> exactCount;
    std::optional<double> ratio;
    double X = 0.0;
    i64 t = 0;
    u64 formDigest = 0;
    double elapsedSeconds = 0.0;
    bool rankBelow5 = false;
};

PredictionReport predict(const QuadraticForm& form, i64 t, double X,
                         const PredictOptions& opts = {});

struct CompareRow {
    double X = 0.0;
    std::optional<double> exactCount;
    double series = 0.0;
    double integral = 0.0;
    double integralStderr = 0.0;
    double mainTerm = 0.0;
    std::optional<double> ratio;
};

std::vector<CompareRow> compare(const QuadraticForm& form, i64 t, const std::vector<double>& Xs,
                                const PredictOptions& opts = {});

// CSV with header X,N_exact,S_series,I_integral,I_stderr,main_term,ratio.
std::string compare_csv(const std::vector<CompareRow>& rows);

struct SmallCaseReport {
    int pairCountInstances = 0; // N1 <= N2 checks run
    int violations = 0;
    double lemma57FittedConstant = 0.0; // sup count / (X^{k+m-2} log X)
    int lemma57Instances = 0;
};

// Brute-force checks at desk scale: the symmetrized pair-count inequality
// N1 <= N2 (N2 over the doubled box produced by x-y=h, x+y=z) and the fitted
// constant for the bilinear zero-count bound.
SmallCaseReport smallcase_lemma_checks(u64 seed);

} // namespace qpc

#endif
