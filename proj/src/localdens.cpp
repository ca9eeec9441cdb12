#include "qpc/localdens.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "qpc/arith.hpp"
#include "qpc/errors.hpp"

namespace qpc {

namespace {

constexpr i64 kHistogramCap = 1 << 22; // modulus cap for dense residue tables

void check_enum_budget(i64 q, std::size_t n, double budget, const char* who) {
    double work = std::pow(static_cast<double>(euler_phi(q)), static_cast<double>(n));
    if (work > budget)
        throw BudgetExceeded(std::string(who) +
                             ": phi(q)^n exceeds the enumeration budget; use chi_p instead");
    if (q > kHistogramCap)
        throw BudgetExceeded(std::string(who) + ": modulus too large for a dense residue table");
}

std::vector<std::complex<double>> phase_table(i64 q) {
    std::vector<std::complex<double>> e(static_cast<std::size_t>(q));
    for (i64 r = 0; r < q; ++r) {
        double ang = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(q);
        e[static_cast<std::size_t>(r)] = {std::cos(ang), std::sin(ang)};
    }
    return e;
}

} // namespace

std::vector<i64> unit_value_histogram(const QuadraticForm& form, i64 q, double budget) {
    if (q < 1) throw std::invalid_argument("unit_value_histogram: q must be >= 1");
    const std::size_t n = form.n();
    check_enum_budget(q, n, budget, "unit_value_histogram");

    std::vector<i64> hist(static_cast<std::size_t>(q), 0);
    if (q == 1) {
        hist[0] = 1; // single residue class, trivially a unit tuple
        return hist;
    }

    std::vector<i64> units;
    for (i64 u = 1; u < q; ++u)
        if (std::gcd(u, q) == 1) units.push_back(u);
    const std::size_t U = units.size();

    const IntMatrix& a = form.matrix();
    // 2*a[d][j] mod q for the running linear part; a[d][d]*u^2 mod q per depth
    std::vector<std::vector<i64>> two_a(n, std::vector<i64>(n));
    for (std::size_t d = 0; d < n; ++d)
        for (std::size_t j = 0; j < n; ++j) {
            i64 v = (2 * (a(d, j) % q)) % q;
            if (v < 0) v += q;
            two_a[d][j] = v;
        }
    std::vector<std::vector<i64>> quad(n, std::vector<i64>(U));
    for (std::size_t d = 0; d < n; ++d) {
        i64 add = a(d, d) % q;
        if (add < 0) add += q;
        for (std::size_t u = 0; u < U; ++u)
            quad[d][u] = (add * ((units[u] * units[u]) % q)) % q;
    }

    // lin[d][j]: 2 * sum_{i<d} a[i][j] x_i mod q; partial[d]: f of the prefix
    std::vector<std::vector<i64>> lin(n + 1, std::vector<i64>(n, 0));
    std::vector<i64> partial(n + 1, 0);

    auto descend = [&](auto&& self, std::size_t d) -> void {
        if (d == n - 1) {
            const i64 base = partial[d];
            const i64 l = lin[d][d];
            const i64* qrow = quad[d].data();
            for (std::size_t u = 0; u < U; ++u) {
                i64 r = (base + qrow[u] + l * units[u]) % q;
                ++hist[static_cast<std::size_t>(r)];
            }
            return;
        }
        for (std::size_t u = 0; u < U; ++u) {
            const i64 v = units[u];
            partial[d + 1] = (partial[d] + quad[d][u] + lin[d][d] * v) % q;
            for (std::size_t j = d + 1; j < n; ++j)
                lin[d + 1][j] = (lin[d][j] + two_a[d][j] * v) % q;
            self(self, d + 1);
        }
    };
    descend(descend, 0);
    return hist;
}

std::complex<double> c_sum(const QuadraticForm& form, i64 q, i64 a, double budget) {
    if (q < 1) throw std::invalid_argument("c_sum: q must be >= 1");
    i64 am = ((a % q) + q) % q;
    if (std::gcd(((am == 0) ? q : am), q) != 1)
        throw std::invalid_argument("c_sum: gcd(a,q) must be 1");
    auto hist = unit_value_histogram(form, q, budget);
    auto e = phase_table(q);
    std::complex<double> s = 0;
    for (i64 r = 0; r < q; ++r) {
        if (hist[static_cast<std::size_t>(r)] == 0) continue;
        s += static_cast<double>(hist[static_cast<std::size_t>(r)]) *
             e[static_cast<std::size_t>((r * am) % q)];
    }
    return s;
}

double b_coeff(const QuadraticForm& form, i64 t, i64 q, double budget) {
    if (q < 1) throw std::invalid_argument("b_coeff: q must be >= 1");
    if (q == 1) return 1.0;
    auto hist = unit_value_histogram(form, q, budget);
    auto e = phase_table(q);
    i64 tm = ((t % q) + q) % q;
    std::complex<double> sum = 0;
    for (i64 a = 1; a < q; ++a) {
        if (std::gcd(a, q) != 1) continue;
        std::complex<double> ca = 0;
        for (i64 r = 0; r < q; ++r) {
            if (hist[static_cast<std::size_t>(r)] == 0) continue;
            ca += static_cast<double>(hist[static_cast<std::size_t>(r)]) *
                  e[static_cast<std::size_t>((r * a) % q)];
        }
        ca *= std::conj(e[static_cast<std::size_t>((tm * a) % q)]);
        sum += ca;
    }
    double phin = std::pow(static_cast<double>(euler_phi(q)), static_cast<double>(form.n()));
    sum /= phin;
    if (std::abs(sum.imag()) > 1e-9)
        throw InvariantViolated("b_coeff: imaginary part failed to cancel");
    return sum.real();
}

i64 unit_count_padic(const QuadraticForm& form, i64 t, i64 p, int M, double budget) {
    if (M < 0) throw std::invalid_argument("unit_count_padic: M must be >= 0");
    if (M == 0) return 1;
    i64 q = 1;
    for (int i = 0; i < M; ++i) q *= p;
    auto hist = unit_value_histogram(form, q, budget);
    i64 tm = ((t % q) + q) % q;
    return hist[static_cast<std::size_t>(tm)];
}

namespace {

i128 ipow128(i64 base, std::size_t e) {
    i128 r = 1;
    for (std::size_t i = 0; i < e; ++i) r *= base;
    return r;
}

// #{x in F_p^m : sum c_i x_i^2 = b} for nonzero diagonal entries c_1..c_m,
// trailing free variables handled by the caller.
i128 diagonal_quadric_count(const std::vector<i64>& c, i64 b, i64 p) {
    const std::size_t m = c.size();
    if (m == 0) return (b % p == 0) ? 1 : 0;
    i64 delta = 1;
    for (i64 ci : c) delta = mulmod(delta, ci, p);
    const i64 bm = ((b % p) + p) % p;
    if (m % 2 == 0) {
        i64 sgnArg = delta;
        if ((m / 2) % 2 == 1) sgnArg = mulmod(sgnArg, p - 1, p); // times (-1)^{m/2}
        int eta = legendre(sgnArg, p);
        i128 v = (bm == 0) ? (p - 1) : -1;
        return ipow128(p, m - 1) + v * ipow128(p, m / 2 - 1) * eta;
    }
    i64 sgnArg = mulmod(delta, bm, p);
    if (((m - 1) / 2) % 2 == 1) sgnArg = mulmod(sgnArg, p - 1, p);
    int eta = (sgnArg % p == 0) ? 0 : legendre(sgnArg, p);
    return ipow128(p, m - 1) + ipow128(p, (m - 1) / 2) * eta;
}

// Symmetric congruence diagonalization of A mod p (p odd): returns the nonzero
// diagonal entries of an equivalent diagonal form.
std::vector<i64> diagonalize_mod_p(const IntMatrix& a, const std::vector<std::size_t>& keep,
                                   i64 p) {
    const std::size_t n = keep.size();
    std::vector<std::vector<i64>> b(n, std::vector<i64>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            i64 v = a(keep[i], keep[j]) % p;
            if (v < 0) v += p;
            b[i][j] = v;
        }
    std::vector<i64> diag;
    for (std::size_t k = 0; k < n; ++k) {
        if (b[k][k] == 0) {
            std::size_t l = k + 1;
            for (; l < n; ++l)
                if (b[l][l] != 0) break;
            if (l < n) {
                std::swap(b[k], b[l]);
                for (std::size_t i = 0; i < n; ++i) std::swap(b[i][k], b[i][l]);
            } else {
                // all remaining diagonal zero: bring in a cross term (p odd)
                for (l = k + 1; l < n; ++l)
                    if (b[k][l] != 0) break;
                if (l < n) {
                    for (std::size_t j = 0; j < n; ++j) b[k][j] = (b[k][j] + b[l][j]) % p;
                    for (std::size_t i = 0; i < n; ++i) b[i][k] = (b[i][k] + b[i][l]) % p;
                }
            }
        }
        if (b[k][k] == 0) continue; // decoupled variable
        const i64 piv = b[k][k];
        const i64 inv = powmod(piv, p - 2, p);
        for (std::size_t i = k + 1; i < n; ++i) {
            if (b[i][k] == 0) continue;
            const i64 f = mulmod(b[i][k], inv, p);
            for (std::size_t j = k; j < n; ++j)
                b[i][j] = (b[i][j] + p - mulmod(f, b[k][j], p) % p) % p;
        }
        for (std::size_t j = k + 1; j < n; ++j) b[k][j] = 0;
        // the column update is implied by symmetry; rebuild it explicitly
        for (std::size_t i = k + 1; i < n; ++i) b[i][k] = 0;
        diag.push_back(piv);
    }
    return diag;
}

i128 quadric_count_unconstrained(const IntMatrix& a, const std::vector<std::size_t>& keep, i64 t,
                                 i64 p) {
    auto diag = diagonalize_mod_p(a, keep, p);
    const std::size_t free_vars = keep.size() - diag.size();
    return ipow128(p, free_vars) * diagonal_quadric_count(diag, t, p);
}

} // namespace

i128 quadric_count_closed(const IntMatrix& a, i64 t, i64 p, bool unitConstraint) {
    if (p == 2 || !is_prime(p))
        throw std::invalid_argument("quadric_count_closed: p must be an odd prime");
    if (!a.is_symmetric()) throw std::invalid_argument("quadric_count_closed: matrix not symmetric");
    const std::size_t n = a.rows();
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), 0);
    if (!unitConstraint) return quadric_count_unconstrained(a, all, t, p);

    if (n > 24) throw UnsupportedSize("quadric_count_closed: unit constraint guarded at n <= 24");
    i128 total = 0;
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        std::vector<std::size_t> keep;
        for (std::size_t i = 0; i < n; ++i)
            if (!(mask & (std::size_t{1} << i))) keep.push_back(i);
        const int sign = (std::popcount(mask) % 2 == 0) ? 1 : -1;
        total += sign * quadric_count_unconstrained(a, keep, t, p);
    }
    return total;
}

LocalDensityReport chi_p(const QuadraticForm& form, i64 t, i64 p, double tol, double budget) {
    if (!is_prime(p)) throw std::invalid_argument("chi_p: p must be prime");
    LocalDensityReport rep;
    rep.p = p;
    rep.rankBelow5 = form.rank() < 5;
    rep.partialSums = {1.0};

    const std::size_t n = form.n();

    // Odd p with A nonsingular mod p: every unit point of f = t mod p is
    // smooth, so the density is already exact at M = 1.
    if (p != 2) {
        std::vector<std::size_t> all(n);
        std::iota(all.begin(), all.end(), 0);
        if (diagonalize_mod_p(form.matrix(), all, p).size() == n) {
            i128 n1 = quadric_count_closed(form.matrix(), t, p, true);
            double chi = static_cast<double>(p) * static_cast<double>(n1) /
                         std::pow(static_cast<double>(p - 1), static_cast<double>(n));
            rep.partialSums.push_back(chi);
            rep.chi = chi;
            rep.M_used = 1;
            rep.stabilized = true;
            rep.method = LocalDensityReport::Method::ClosedFormFp;
            return rep;
        }
    }

    rep.method = LocalDensityReport::Method::Enumeration;
    i64 q = 1;
    for (int M = 1;; ++M) {
        if (q > std::numeric_limits<i64>::max() / p) break;
        q *= p;
        double work =
            std::pow(static_cast<double>(euler_phi(q)), static_cast<double>(n));
        if (work > budget || q > kHistogramCap) break;
        i64 nm = unit_count_padic(form, t, p, M, budget);
        // exact rational p^M * N_M / phi(p^M)^n evaluated in double
        double pm =
            static_cast<double>(q) * static_cast<double>(nm) /
            std::pow(static_cast<double>(euler_phi(q)), static_cast<double>(n));
        rep.partialSums.push_back(pm);
        rep.M_used = M;
        if (std::abs(pm - rep.partialSums[rep.partialSums.size() - 2]) <= tol) {
            rep.stabilized = true;
            rep.chi = pm;
            return rep;
        }
    }
    rep.stabilized = false;
    rep.chi = rep.partialSums.back();
    return rep;
}

SeriesEstimate singular_series(const QuadraticForm& form, i64 t, double tol, i64 P0,
                               double budget) {
    if (form.rank() < 5)
        throw std::invalid_argument("singular_series: requires rank(A) >= 5 for the tail bound");
    SeriesEstimate est;
    est.Q0 = P0;
    double value = 1.0;
    double fittedTail = 0.0; // fitted on p >= 11 where the decay regime applies
    double fittedAll = 0.0;
    for (i64 p : primes_up_to(P0)) {
        LocalDensityReport rep = chi_p(form, t, p, tol, budget);
        if (!rep.stabilized)
            throw NotStabilized("singular_series: chi_p did not stabilize at p = " +
                                std::to_string(p));
        est.perPrimeFactors.emplace_back(p, rep.chi);
        value *= rep.chi;
        double scaled = std::abs(rep.chi - 1.0) * std::pow(static_cast<double>(p), 1.4);
        fittedAll = std::max(fittedAll, scaled);
        if (p >= 11) fittedTail = std::max(fittedTail, scaled);
    }
    est.partial = value;
    est.value = value;
    est.fittedDecayC = fittedAll;
    // sum_{p > P0} C p^{-1.4} <= C * integral_{P0}^inf x^{-1.4} dx
    double s = fittedTail * std::pow(static_cast<double>(P0), -0.4) / 0.4;
    est.tailBound = std::abs(value) * std::expm1(s);
    return est;
}

std::vector<i64> obstruction_scan(const QuadraticForm& form, i64 t, i64 P0, double budget) {
    std::vector<i64> obstructed;
    for (i64 p : primes_up_to(P0)) {
        LocalDensityReport rep = chi_p(form, t, p, 1e-9, budget);
        if (!rep.stabilized)
            throw NotStabilized("obstruction_scan: chi_p did not stabilize at p = " +
                                std::to_string(p));
        if (rep.chi == 0.0) obstructed.push_back(p);
    }
    return obstructed;
}

} // namespace qpc
