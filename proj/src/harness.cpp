#include "qpc/harness.hpp"

#include <chrono>
#include <cmath>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

#include "qpc/errors.hpp"

namespace qpc {

PredictionReport predict(const QuadraticForm& form, i64 t, double X, const PredictOptions& opts) {
    const auto start = std::chrono::steady_clock::now();
    PredictionReport rep;
    rep.X = X;
    rep.t = t;
    rep.formDigest = form.digest();
    rep.rankBelow5 = form.rank() < 5;

    rep.series = singular_series(form, t, opts.tol, opts.seriesPrimeLimit);
    rep.integral = singular_integral_coarea(form, t, X, opts.samples, opts.seed);
    rep.mainTerm = rep.series.value * rep.integral.value;

    if (opts.wantExact) {
        const i64 Xi = static_cast<i64>(X);
        bool counted = false;
        if (form.is_diagonal()) {
            std::vector<i64> coeffs(form.n());
            for (std::size_t i = 0; i < form.n(); ++i) coeffs[i] = form.matrix()(i, i);
            rep.exactCount = count_diagonal(coeffs, t, Xi);
            counted = true;
        } else {
            try {
                rep.exactCount = count_exact(form, t, Xi, opts.threads, opts.countBudget);
                counted = true;
            } catch (const BudgetExceeded&) {
                // prediction still stands without the exact count
            }
        }
        if (counted && rep.mainTerm != 0.0) rep.ratio = *rep.exactCount / rep.mainTerm;
    }
    rep.elapsedSeconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

std::vector<CompareRow> compare(const QuadraticForm& form, i64 t, const std::vector<double>& Xs,
                                const PredictOptions& opts) {
    std::vector<CompareRow> rows;
    rows.reserve(Xs.size());
    for (double X : Xs) {
        PredictionReport rep = predict(form, t, X, opts);
        CompareRow row;
        row.X = X;
        row.exactCount = rep.exactCount;
        row.series = rep.series.value;
        row.integral = rep.integral.value;
        row.integralStderr = rep.integral.stderr_;
        row.mainTerm = rep.mainTerm;
        row.ratio = rep.ratio;
        rows.push_back(row);
    }
    return rows;
}

std::string compare_csv(const std::vector<CompareRow>& rows) {
    std::ostringstream out;
    out.precision(12);
    out << "X,N_exact,S_series,I_integral,I_stderr,main_term,ratio\n";
    for (const CompareRow& r : rows) {
        out << r.X << ',';
        if (r.exactCount) out << *r.exactCount;
        out << ',' << r.series << ',' << r.integral << ',' << r.integralStderr << ','
            << r.mainTerm << ',';
        if (r.ratio) out << *r.ratio;
        out << '\n';
    }
    return out.str();
}

namespace {

// integer vectors in [-B, B]^n, odometer enumeration
bool advance(std::vector<i64>& x, i64 B) {
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] < B) {
            ++x[i];
            for (std::size_t j = 0; j < i; ++j) x[j] = -B;
            return true;
        }
    }
    return false;
}

} // namespace

SmallCaseReport smallcase_lemma_checks(u64 seed) {
    SmallCaseReport rep;
    std::mt19937_64 rng(seed);
    auto pick = [&rng](i64 lo, i64 hi) {
        return lo + static_cast<i64>(rng() % static_cast<u64>(hi - lo + 1));
    };

    // Pair-count inequality: N1 over [-X,X], N2 over the doubled box reached by
    // x-y = h, x+y = z. Entries rational with denominator up to 3; the common
    // denominator cancels from every constraint, so all arithmetic is integer.
    for (int inst = 0; inst < 100; ++inst) {
        const std::size_t n = static_cast<std::size_t>(pick(1, 3));
        const std::size_t k = static_cast<std::size_t>(pick(0, 3));
        const i64 X = pick(2, 6);
        std::vector<std::vector<i64>> C(n, std::vector<i64>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) C[i][j] = C[j][i] = pick(-3, 3);
        std::vector<std::vector<i64>> H(n, std::vector<i64>(k));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t c = 0; c < k; ++c) H[i][c] = pick(-3, 3);

        auto quad = [&](const std::vector<i64>& x) {
            i64 v = 0;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) v += C[i][j] * x[i] * x[j];
            return v;
        };
        auto hrow = [&](const std::vector<i64>& x) {
            std::vector<i64> v(k, 0);
            for (std::size_t c = 0; c < k; ++c)
                for (std::size_t i = 0; i < n; ++i) v[c] += H[i][c] * x[i];
            return v;
        };

        // N1: group by (x^T C x, x^T H)
        std::map<std::pair<i64, std::vector<i64>>, i64> groups;
        std::vector<i64> x(n, -X);
        do {
            ++groups[{quad(x), hrow(x)}];
        } while (advance(x, X));
        i64 n1 = 0;
        for (const auto& [key, cnt] : groups) n1 += cnt * cnt;

        // N2 over [-2X, 2X]: pairs with h^T C z = 0 and h^T H = 0
        i64 n2 = 0;
        const i64 B2 = 2 * X;
        std::vector<i64> h(n, -B2);
        do {
            bool hzero = true;
            for (i64 v : hrow(h))
                if (v != 0) hzero = false;
            if (!hzero) continue;
            std::vector<i64> w(n, 0); // C h
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) w[i] += C[i][j] * h[j];
            // count z in the box with w . z = 0
            std::size_t piv = n;
            for (std::size_t i = 0; i < n; ++i)
                if (w[i] != 0) piv = i;
            if (piv == n) {
                i64 boxCount = 1;
                for (std::size_t i = 0; i < n; ++i) boxCount *= 2 * B2 + 1;
                n2 += boxCount;
                continue;
            }
            std::vector<i64> z(n - 1, -B2);
            bool more = n > 1;
            if (n == 1) {
                n2 += 1; // z = 0 only, since w != 0
                continue;
            }
            do {
                i64 dot = 0;
                std::size_t zi = 0;
                for (std::size_t i = 0; i < n; ++i)
                    if (i != piv) dot += w[i] * z[zi++];
                if (dot % w[piv] == 0) {
                    i64 zp = -dot / w[piv];
                    if (zp >= -B2 && zp <= B2) ++n2;
                }
            } while ((more = advance(z, B2)));
        } while (advance(h, B2));

        ++rep.pairCountInstances;
        if (n1 > n2) {
            ++rep.violations;
            throw InvariantViolated("smallcase_lemma_checks: pair-count inequality violated");
        }
    }

    // Bilinear zero-count: fitted constant in count <= C' X^{k+m-2} log X
    for (int inst = 0; inst < 20; ++inst) {
        std::size_t k = static_cast<std::size_t>(pick(2, 3));
        std::size_t m = static_cast<std::size_t>(pick(2, 3));
        std::vector<std::vector<i64>> C;
        while (true) {
            C.assign(k, std::vector<i64>(m));
            IntMatrix im(k, m);
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < m; ++j) im(i, j) = C[i][j] = pick(-3, 3);
            if (rank_exact(im) >= 2) break;
        }
        for (i64 X : {4, 8, 16}) {
            i64 count = 0;
            std::vector<i64> x(k, -X);
            do {
                std::vector<i64> w(m, 0);
                for (std::size_t j = 0; j < m; ++j)
                    for (std::size_t i = 0; i < k; ++i) w[j] += C[i][j] * x[i];
                std::size_t piv = m;
                for (std::size_t j = 0; j < m; ++j)
                    if (w[j] != 0) piv = j;
                if (piv == m) {
                    i64 c = 1;
                    for (std::size_t j = 0; j < m; ++j) c *= 2 * X + 1;
                    count += c;
                    continue;
                }
                if (m == 1) {
                    ++count;
                    continue;
                }
                std::vector<i64> y(m - 1, -X);
                do {
                    i64 dot = 0;
                    std::size_t yi = 0;
                    for (std::size_t j = 0; j < m; ++j)
                        if (j != piv) dot += w[j] * y[yi++];
                    if (dot % w[piv] == 0) {
                        i64 yp = -dot / w[piv];
                        if (yp >= -X && yp <= X) ++count;
                    }
                } while (advance(y, X));
            } while (advance(x, X));
            double bound = std::pow(static_cast<double>(X), static_cast<double>(k + m - 2)) *
                           std::log(static_cast<double>(X));
            rep.lemma57FittedConstant =
                std::max(rep.lemma57FittedConstant, static_cast<double>(count) / bound);
        }
        ++rep.lemma57Instances;
    }
    return rep;
}

} // namespace qpc
