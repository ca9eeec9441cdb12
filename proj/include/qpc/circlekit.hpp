#ifndef QPC_CIRCLEKIT_HPP
#define QPC_CIRCLEKIT_HPP

#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qpc/arith.hpp"
#include "qpc/quadform.hpp"
#include "qpc/ratmat.hpp"

namespace qpc {

// Exact conversions into Q. Doubles convert exactly (they are rationals);
// decimal strings like "0.3" become 3/10, "a/b" is accepted directly.
Rat rat_of_double(double x);
std::optional<Rat> rat_of_string(const std::string& text);

struct Arc {
    i64 q = 0, a = 0;
    Rat center;    // a/q
    Rat halfwidth; // Q/(q X^2)
};

struct ArcDissection {
    Rat X, Q;
    Rat ambientLo, ambientHi; // [1/X, 1 + 1/X], closed endpoints
    std::vector<Arc> arcs;    // sorted by center
    bool disjoint = false;    // exact pairwise check
    Rat totalMeasure;         // sum of full widths
};

// All arcs (q,a), q <= Q, (a,q) = 1. Disjointness holds whenever Q <= X/2 and
// is verified exactly rather than assumed.
ArcDissection build_dissection(const Rat& X, const Rat& Q);

struct ArcLocation {
    bool major = false;
    i64 q = 0, a = 0;         // containing arc when major
    i64 dirichlet_q = 0, dirichlet_a = 0; // |alpha - a/q| <= 1/(qX), q <= X
};

// Containing major arc (exact membership) plus the Dirichlet approximation
// from the continued-fraction convergents of alpha.
ArcLocation locate_arc(const ArcDissection& d, const Rat& alpha);

// sum_{|x| <= floor(X)} min(X, ||x alpha||^{-1}), exact; the x = 0 term is X.
Rat min_norm_sum(const Rat& alpha, const Rat& X);

// f(alpha, beta) = sum_{1<=x<=X} Lambda(x) e(alpha d x^2 + x beta), d != 0.
std::complex<double> lambda_sum_1d(const Rat& d, const Rat& alpha, const Rat& beta, i64 X,
                                   const LambdaTable& table);

// S(alpha) over the Lambda support, exact phases for rational alpha.
std::complex<double> s_alpha_small(const QuadraticForm& form, const Rat& alpha, i64 X,
                                   const LambdaTable& table, double budget = 1e9);

// lhs = sum_y |sum_z xi_z e(alpha y z)|^2 over |y|,|z| <= X;
// rhs = X * min_norm_sum(alpha, X). Returned for the lhs <= C rhs property.
std::pair<double, double> bilinear_check(const std::vector<std::complex<double>>& xi,
                                         const Rat& alpha, i64 X);

// Exact measure of a union of closed intervals.
Rat measure_union(std::vector<std::pair<Rat, Rat>> intervals);
// Exact measure of (union A) \ (union B).
Rat measure_difference(const std::vector<std::pair<Rat, Rat>>& a,
                       const std::vector<std::pair<Rat, Rat>>& b);

std::vector<std::pair<Rat, Rat>> arc_intervals(const ArcDissection& d);

} // namespace qpc

#endif
