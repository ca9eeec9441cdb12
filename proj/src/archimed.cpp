#include "qpc/archimed.hpp"

#include <gmpxx.h>

#include <cmath>
#include <future>
#include <numbers>
#include <random>
#include <stdexcept>
#include <thread>
#include <vector>

#include "qpc/errors.hpp"

namespace qpc {

namespace {

constexpr u64 kShardSize = 1 << 16;

// Fixed shard decomposition with substreams keyed by (seed, shard); results
// combine in shard order, so thread count never changes the bits.
template <typename Shard, typename Acc>
void run_sharded(u64 samples, u64 seed, Shard&& shard, Acc&& accumulate) {
    const u64 nShards = (samples + kShardSize - 1) / kShardSize;
    const unsigned workers =
        std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(),
                                        static_cast<unsigned>(nShards)));
    using Result = decltype(shard(u64{0}, u64{0}, std::declval<std::mt19937_64&>()));
    std::vector<Result> results(nShards);
    std::atomic<u64> next{0};
    auto work = [&]() {
        while (true) {
            u64 s = next.fetch_add(1);
            if (s >= nShards) return;
            u64 lo = s * kShardSize;
            u64 hi = std::min(samples, lo + kShardSize);
            std::mt19937_64 rng(splitmix64(seed ^ (0xA24BAED4963EE407ULL + s)));
            results[s] = shard(lo, hi, rng);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
    for (u64 s = 0; s < nShards; ++s) accumulate(results[s]);
}

inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

struct Kahan {
    double sum = 0.0, c = 0.0;
    void add(double v) {
        double y = v - c;
        double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
};

double form_value(const IntMatrix& a, const std::vector<double>& x) {
    const std::size_t n = a.rows();
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < n; ++j) row += static_cast<double>(a(i, j)) * x[j];
        acc += row * x[i];
    }
    return acc;
}

// Exact sign of b^2 - 4ac, deciding borderline cases in rational arithmetic
// (doubles are rationals, so this is exact).
int discriminant_sign(double a, double b, double c) {
    double disc = b * b - 4.0 * a * c;
    double scale = std::max(b * b, std::abs(4.0 * a * c));
    if (std::abs(disc) > 1e-9 * scale) return disc > 0 ? 1 : -1;
    mpq_class qa(a), qb(b), qc(c);
    mpq_class exact = qb * qb - 4 * qa * qc;
    return sgn(exact);
}

} // namespace

ComplexEstimate i_beta_mc(const QuadraticForm& form, double X, double beta, u64 samples,
                          u64 seed) {
    if (samples < 1) throw std::invalid_argument("i_beta_mc: samples must be >= 1");
    const std::size_t n = form.n();
    const IntMatrix& a = form.matrix();
    const double vol = std::pow(X - 1.0, static_cast<double>(n));

    struct ShardResult {
        double re = 0, im = 0, re2 = 0, im2 = 0;
    };
    Kahan re, im, re2, im2;
    run_sharded(
        samples, seed,
        [&](u64 lo, u64 hi, std::mt19937_64& rng) {
            ShardResult r;
            Kahan sre, sim, sre2, sim2;
            std::vector<double> x(n);
            for (u64 s = lo; s < hi; ++s) {
                for (std::size_t i = 0; i < n; ++i) x[i] = 1.0 + (X - 1.0) * uniform01(rng);
                double phase = 2.0 * std::numbers::pi * beta * form_value(a, x);
                double cr = std::cos(phase), ci = std::sin(phase);
                sre.add(cr);
                sim.add(ci);
                sre2.add(cr * cr);
                sim2.add(ci * ci);
            }
            r.re = sre.sum;
            r.im = sim.sum;
            r.re2 = sre2.sum;
            r.im2 = sim2.sum;
            return r;
        },
        [&](const ShardResult& r) {
            re.add(r.re);
            im.add(r.im);
            re2.add(r.re2);
            im2.add(r.im2);
        });

    const double m = static_cast<double>(samples);
    double meanRe = re.sum / m, meanIm = im.sum / m;
    double varRe = std::max(0.0, re2.sum / m - meanRe * meanRe);
    double varIm = std::max(0.0, im2.sum / m - meanIm * meanIm);
    ComplexEstimate est;
    est.value = std::complex<double>(meanRe, meanIm) * vol;
    est.stderr_ = vol * std::sqrt((varRe + varIm) / m);
    est.samples = samples;
    est.seed = seed;
    return est;
}

IntegralEstimate singular_integral_coarea(const QuadraticForm& form, i64 t, double X, u64 samples,
                                          u64 seed) {
    if (samples < 1) throw std::invalid_argument("coarea: samples must be >= 1");
    const std::size_t n = form.n();
    const IntMatrix& a = form.matrix();

    // pivot candidates: variables actually involved in f
    std::vector<std::size_t> pivots;
    for (std::size_t v = 0; v < n; ++v) {
        bool involved = false;
        for (std::size_t j = 0; j < n; ++j)
            if (a(v, j) != 0) involved = true;
        if (involved) pivots.push_back(v);
    }
    if (pivots.empty())
        throw std::invalid_argument("coarea: form involves no variable");

    const double delta = 1e-6 * X;
    const double volSlice = std::pow(X - 1.0, static_cast<double>(n - 1));

    struct ShardResult {
        double sum = 0, sum2 = 0;
        u64 degenerate = 0;
    };
    Kahan sum, sum2;
    u64 degenerate = 0;
    run_sharded(
        samples, seed,
        [&](u64 lo, u64 hi, std::mt19937_64& rng) {
            ShardResult r;
            Kahan ssum, ssum2;
            std::vector<double> draws(n - 1);
            std::vector<double> x(n);
            for (u64 s = lo; s < hi; ++s) {
                for (std::size_t i = 0; i + 1 < n; ++i) draws[i] = 1.0 + (X - 1.0) * uniform01(rng);
                double contribution = 0.0;
                bool resolved = false;
                for (std::size_t pv : pivots) {
                    // assign the same draws to the non-pivot coordinates
                    std::size_t k = 0;
                    for (std::size_t i = 0; i < n; ++i)
                        if (i != pv) x[i] = draws[k++];
                    x[pv] = 0.0;
                    const double qa = static_cast<double>(a(pv, pv));
                    double qb = 0.0;
                    for (std::size_t j = 0; j < n; ++j)
                        if (j != pv) qb += 2.0 * static_cast<double>(a(pv, j)) * x[j];
                    const double qc = form_value(a, x) - static_cast<double>(t);

                    double roots[2];
                    int nroots = 0;
                    if (qa != 0.0) {
                        int ds = discriminant_sign(qa, qb, qc);
                        if (ds < 0) {
                            resolved = true; // fiber misses the level set
                            break;
                        }
                        double disc = std::max(0.0, qb * qb - 4.0 * qa * qc);
                        double sq = std::sqrt(disc);
                        roots[nroots++] = (-qb - sq) / (2.0 * qa);
                        if (ds > 0) roots[nroots++] = (-qb + sq) / (2.0 * qa);
                    } else if (std::abs(qb) >= delta) {
                        roots[nroots++] = -qc / qb;
                    } else {
                        continue; // pivot degenerate here, rotate
                    }
                    bool nearSingular = false;
                    double local = 0.0;
                    for (int ri = 0; ri < nroots; ++ri) {
                        double root = roots[ri];
                        if (root < 1.0 || root > X) continue;
                        double grad = std::abs(2.0 * qa * root + qb);
                        if (grad < delta) {
                            nearSingular = true;
                            break;
                        }
                        local += 1.0 / grad;
                    }
                    if (nearSingular) continue; // rotate pivot
                    contribution = local;
                    resolved = true;
                    break;
                }
                if (!resolved) ++r.degenerate; // contributes 0
                ssum.add(contribution);
                ssum2.add(contribution * contribution);
            }
            r.sum = ssum.sum;
            r.sum2 = ssum2.sum;
            return r;
        },
        [&](const ShardResult& r) {
            sum.add(r.sum);
            sum2.add(r.sum2);
            degenerate += r.degenerate;
        });

    const double m = static_cast<double>(samples);
    double mean = sum.sum / m;
    double var = std::max(0.0, sum2.sum / m - mean * mean);
    IntegralEstimate est;
    est.method = IntegralEstimate::Method::Coarea;
    est.value = mean * volSlice;
    est.stderr_ = volSlice * std::sqrt(var / m);
    est.samples = samples;
    est.seed = seed;
    est.degenerateSamples = degenerate;
    return est;
}

IntegralEstimate singular_integral_shell(const QuadraticForm& form, i64 t, double X, double eps,
                                         u64 samples, u64 seed) {
    if (eps <= 0) throw std::invalid_argument("shell: eps must be positive");
    if (samples < 1) throw std::invalid_argument("shell: samples must be >= 1");
    const std::size_t n = form.n();
    const IntMatrix& a = form.matrix();
    const double vol = std::pow(X - 1.0, static_cast<double>(n));

    struct ShardResult {
        u64 hits = 0;
    };
    u64 hits = 0;
    run_sharded(
        samples, seed,
        [&](u64 lo, u64 hi, std::mt19937_64& rng) {
            ShardResult r;
            std::vector<double> x(n);
            for (u64 s = lo; s < hi; ++s) {
                for (std::size_t i = 0; i < n; ++i) x[i] = 1.0 + (X - 1.0) * uniform01(rng);
                if (std::abs(form_value(a, x) - static_cast<double>(t)) < eps) ++r.hits;
            }
            return r;
        },
        [&](const ShardResult& r) { hits += r.hits; });

    const double m = static_cast<double>(samples);
    double frac = static_cast<double>(hits) / m;
    double var = std::max(0.0, frac * (1.0 - frac));
    IntegralEstimate est;
    est.method = IntegralEstimate::Method::Shell;
    est.value = vol * frac / (2.0 * eps);
    est.stderr_ = vol * std::sqrt(var / m) / (2.0 * eps);
    est.samples = samples;
    est.seed = seed;
    est.eps = eps;
    return est;
}

} // namespace qpc
