// Exact weighted counting of prime-variable solutions.
#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

#include "qpc/arith.hpp"
#include "qpc/errors.hpp"
#include "qpc/harness.hpp"

namespace qpc {

namespace {

struct Kahan {
    double sum = 0.0, c = 0.0;
    void add(double v) {
        double y = v - c;
        double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
};

struct CountContext {
    std::size_t n;
    i64 t;
    std::vector<i64> pps;      // prime powers <= X, ascending
    std::vector<double> lam;   // Lambda(pps[k])
    double lambdaTotal;        // sum of lam
    std::vector<std::vector<i64>> a;  // reordered matrix
    std::vector<std::vector<i64>> a2; // 2*a
};

// DFS over positions [depth, n-2]; the innermost variable is solved exactly.
// lin[j] = 2 * sum_{i<depth} a[i][j] x_i for j >= depth.
void count_rec(const CountContext& ctx, std::size_t depth, i64 partial, double weight,
               std::vector<std::vector<i64>>& lin, Kahan& acc) {
    const std::size_t n = ctx.n;
    const std::size_t m = n - 1;
    if (depth == m) {
        const i64 qa = ctx.a[m][m];
        const i64 qb = lin[depth][m];
        const i64 qc = partial - ctx.t;
        if (qa != 0) {
            const i128 disc = static_cast<i128>(qb) * qb - static_cast<i128>(4) * qa * qc;
            if (disc < 0) return;
            auto s = perfect_sqrt(disc);
            if (!s) return;
            for (int sign : {-1, 1}) {
                const i64 num = -qb + sign * *s;
                const i64 den = 2 * qa;
                if (num % den != 0) continue;
                const i64 v = num / den;
                if (v < 2 || v > ctx.pps.back()) continue;
                auto it = std::lower_bound(ctx.pps.begin(), ctx.pps.end(), v);
                if (it == ctx.pps.end() || *it != v) continue;
                acc.add(weight * ctx.lam[static_cast<std::size_t>(it - ctx.pps.begin())]);
                if (*s == 0) break; // double root
            }
        } else if (qb != 0) {
            if ((-qc) % qb != 0) return;
            const i64 v = -qc / qb;
            if (v < 2 || v > ctx.pps.back()) return;
            auto it = std::lower_bound(ctx.pps.begin(), ctx.pps.end(), v);
            if (it == ctx.pps.end() || *it != v) return;
            acc.add(weight * ctx.lam[static_cast<std::size_t>(it - ctx.pps.begin())]);
        } else if (qc == 0) {
            acc.add(weight * ctx.lambdaTotal); // every prime power solves the fiber
        }
        return;
    }
    for (std::size_t k = 0; k < ctx.pps.size(); ++k) {
        const i64 v = ctx.pps[k];
        const i64 newPartial = partial + (ctx.a[depth][depth] * v + lin[depth][depth]) * v;
        for (std::size_t j = depth + 1; j < n; ++j)
            lin[depth + 1][j] = lin[depth][j] + ctx.a2[depth][j] * v;
        count_rec(ctx, depth + 1, newPartial, weight * ctx.lam[k], lin, acc);
    }
}

} // namespace

double count_exact(const QuadraticForm& form, i64 t, i64 X, int threads, double budget) {
    const std::size_t n = form.n();
    if (n < 2) throw std::invalid_argument("count_exact: requires n >= 2");
    if (X < 2) return 0.0;

    LambdaTable table(X);
    const auto& pps = table.prime_powers();
    if (pps.empty()) return 0.0;
    const double work =
        std::pow(static_cast<double>(pps.size()), static_cast<double>(n - 1));
    if (work > budget)
        throw BudgetExceeded(
            "count_exact: (#prime powers)^(n-1) fiber solves exceed the budget; "
            "use count_diagonal or a smaller X");

    // overflow guard for the incremental partial values
    i64 maxA = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) maxA = std::max(maxA, std::abs(form.matrix()(i, j)));
    const double bound = static_cast<double>(maxA) * static_cast<double>(n) *
                         static_cast<double>(n) * static_cast<double>(X) * static_cast<double>(X);
    if (bound > 9e17) throw BudgetExceeded("count_exact: partial values would overflow 64 bits");

    // innermost variable: the one with the most nonzero off-diagonal entries,
    // so the fiber solve sees the richest linear part
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    auto offCount = [&](std::size_t v) {
        std::size_t c = 0;
        for (std::size_t j = 0; j < n; ++j)
            if (j != v && form.matrix()(v, j) != 0) ++c;
        return c;
    };
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return offCount(x) < offCount(y); });

    CountContext ctx;
    ctx.n = n;
    ctx.t = t;
    ctx.pps = pps;
    ctx.lam.resize(pps.size());
    double lamTotal = 0.0;
    for (std::size_t k = 0; k < pps.size(); ++k) {
        ctx.lam[k] = table.lambda(pps[k]);
        lamTotal += ctx.lam[k];
    }
    ctx.lambdaTotal = lamTotal;
    ctx.a.assign(n, std::vector<i64>(n));
    ctx.a2.assign(n, std::vector<i64>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            ctx.a[i][j] = form.matrix()(order[i], order[j]);
            ctx.a2[i][j] = 2 * ctx.a[i][j];
        }

    // one chunk per outermost value: the decomposition is fixed, reduction is
    // ordered, so the result is independent of the thread count
    const std::size_t chunks = pps.size();
    std::vector<double> chunkSums(chunks, 0.0);
    std::atomic<std::size_t> next{0};
    unsigned nThreads = threads > 0 ? static_cast<unsigned>(threads)
                                    : std::max(1u, std::thread::hardware_concurrency());
    nThreads = std::min<unsigned>(nThreads, static_cast<unsigned>(chunks));

    auto workFn = [&]() {
        std::vector<std::vector<i64>> lin(n + 1, std::vector<i64>(n, 0));
        while (true) {
            std::size_t k = next.fetch_add(1);
            if (k >= chunks) return;
            Kahan acc;
            if (n == 1) continue;
            const i64 v = ctx.pps[k];
            const i64 partial = ctx.a[0][0] * v * v;
            for (std::size_t j = 1; j < n; ++j) lin[1][j] = ctx.a2[0][j] * v;
            count_rec(ctx, 1, partial, ctx.lam[k], lin, acc);
            chunkSums[k] = acc.sum;
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < nThreads; ++w) pool.emplace_back(workFn);
    workFn();
    for (auto& th : pool) th.join();

    Kahan total;
    for (std::size_t k = 0; k < chunks; ++k) total.add(chunkSums[k]);
    return total.sum;
}

double count_diagonal(const std::vector<i64>& coeffs, i64 t, i64 X) {
    const std::size_t n = coeffs.size();
    if (n < 1) throw std::invalid_argument("count_diagonal: empty coefficient list");
    for (i64 c : coeffs)
        if (c == 0) throw std::invalid_argument("count_diagonal: coefficients must be nonzero");
    if (X < 2) return 0.0;

    LambdaTable table(X);
    const auto& pps = table.prime_powers();
    if (pps.empty()) return 0.0;

    // per-coordinate value lists
    struct Hist {
        i64 lo = 0, hi = -1;         // value range [lo, hi]
        std::vector<double> w;       // dense weights
        std::vector<i64> touched;    // indices with nonzero weight
    };
    auto singleton = [&](i64 coeff) {
        Hist h;
        i64 lo = INT64_MAX, hi = INT64_MIN;
        for (i64 x : pps) {
            i64 v = coeff * x * x;
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        h.lo = lo;
        h.hi = hi;
        h.w.assign(static_cast<std::size_t>(hi - lo + 1), 0.0);
        for (i64 x : pps) {
            i64 v = coeff * x * x - lo;
            if (h.w[static_cast<std::size_t>(v)] == 0.0) h.touched.push_back(v);
            h.w[static_cast<std::size_t>(v)] += table.lambda(x);
        }
        std::sort(h.touched.begin(), h.touched.end());
        return h;
    };
    auto fold = [&](const Hist& acc, i64 coeff) {
        Hist nxt;
        i64 clo = INT64_MAX, chi = INT64_MIN;
        for (i64 x : pps) {
            i64 v = coeff * x * x;
            clo = std::min(clo, v);
            chi = std::max(chi, v);
        }
        nxt.lo = acc.lo + clo;
        nxt.hi = acc.hi + chi;
        const i128 span = static_cast<i128>(nxt.hi) - nxt.lo + 1;
        if (span > (i128{1} << 28))
            throw BudgetExceeded("count_diagonal: value range too large for the histogram");
        nxt.w.assign(static_cast<std::size_t>(span), 0.0);
        std::vector<char> seen(static_cast<std::size_t>(span), 0);
        for (i64 vi : acc.touched) {
            const double weight = acc.w[static_cast<std::size_t>(vi)];
            const i64 base = acc.lo + vi;
            for (i64 x : pps) {
                const i64 idx = base + coeff * x * x - nxt.lo;
                nxt.w[static_cast<std::size_t>(idx)] += weight * table.lambda(x);
                if (!seen[static_cast<std::size_t>(idx)]) {
                    seen[static_cast<std::size_t>(idx)] = 1;
                    nxt.touched.push_back(idx);
                }
            }
        }
        std::sort(nxt.touched.begin(), nxt.touched.end());
        return nxt;
    };

    const std::size_t n1 = n / 2;
    if (n1 == 0) {
        // n == 1: direct scan
        double s = 0.0;
        for (i64 x : pps)
            if (coeffs[0] * x * x == t) s += table.lambda(x);
        return s;
    }
    Hist left = singleton(coeffs[0]);
    for (std::size_t i = 1; i < n1; ++i) left = fold(left, coeffs[i]);
    Hist right = singleton(coeffs[n1]);
    for (std::size_t i = n1 + 1; i < n; ++i) right = fold(right, coeffs[i]);

    Kahan total;
    for (i64 vi : left.touched) {
        const i64 need = t - (left.lo + vi);
        if (need < right.lo || need > right.hi) continue;
        const double rw = right.w[static_cast<std::size_t>(need - right.lo)];
        if (rw != 0.0) total.add(left.w[static_cast<std::size_t>(vi)] * rw);
    }
    return total.sum;
}

} // namespace qpc
