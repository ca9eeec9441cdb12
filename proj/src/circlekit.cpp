#include "qpc/circlekit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "qpc/errors.hpp"

namespace qpc {

Rat rat_of_double(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("rat_of_double: non-finite value");
    mpq_class q;
    mpq_set_d(q.get_mpq_t(), x);
    q.canonicalize();
    return q;
}

std::optional<Rat> rat_of_string(const std::string& text) {
    std::string s = text;
    s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return c == ' '; }), s.end());
    if (s.empty()) return std::nullopt;
    bool neg = false;
    if (s[0] == '+' || s[0] == '-') {
        neg = s[0] == '-';
        s = s.substr(1);
        if (s.empty()) return std::nullopt;
    }
    auto all_digits = [](const std::string& d) {
        return !d.empty() && std::all_of(d.begin(), d.end(), [](char c) { return c >= '0' && c <= '9'; });
    };
    Rat value;
    if (auto slash = s.find('/'); slash != std::string::npos) {
        std::string num = s.substr(0, slash), den = s.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) return std::nullopt;
        mpz_class n(num), d(den);
        if (d == 0) return std::nullopt;
        value = Rat(n, d);
    } else if (auto dot = s.find('.'); dot != std::string::npos) {
        std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
        if (ip.empty()) ip = "0";
        if (!all_digits(ip) || (!fp.empty() && !all_digits(fp))) return std::nullopt;
        mpz_class n(ip);
        mpz_class den(1);
        for (char c : fp) {
            n = n * 10 + (c - '0');
            den *= 10;
        }
        value = Rat(n, den);
    } else {
        if (!all_digits(s)) return std::nullopt;
        value = Rat(mpz_class(s));
    }
    value.canonicalize();
    if (neg) value = -value;
    return value;
}

ArcDissection build_dissection(const Rat& X, const Rat& Q) {
    if (Q < 1) throw std::invalid_argument("build_dissection: Q must be >= 1");
    if (X <= 0) throw std::invalid_argument("build_dissection: X must be positive");
    ArcDissection d;
    d.X = X;
    d.Q = Q;
    d.ambientLo = Rat(1) / X;
    d.ambientHi = Rat(1) + Rat(1) / X;
    const Rat X2 = X * X;
    mpz_class qmaxz = Q.get_num() / Q.get_den(); // floor(Q)
    const i64 qmax = static_cast<i64>(qmaxz.get_si());
    d.totalMeasure = 0;
    for (i64 q = 1; q <= qmax; ++q) {
        Rat hw = Q / (Rat(static_cast<long>(q)) * X2);
        for (i64 a = 1; a <= q; ++a) {
            if (std::gcd(a, q) != 1) continue;
            Arc arc;
            arc.q = q;
            arc.a = a;
            arc.center = Rat(static_cast<long>(a), static_cast<long>(q));
            arc.center.canonicalize();
            arc.halfwidth = hw;
            d.arcs.push_back(std::move(arc));
            d.totalMeasure += 2 * hw;
        }
    }
    std::sort(d.arcs.begin(), d.arcs.end(),
              [](const Arc& l, const Arc& r) { return l.center < r.center; });
    d.disjoint = true;
    for (std::size_t i = 0; i + 1 < d.arcs.size(); ++i) {
        Rat hi = d.arcs[i].center + d.arcs[i].halfwidth;
        Rat lo = d.arcs[i + 1].center - d.arcs[i + 1].halfwidth;
        if (!(hi < lo)) { // closed intervals: touching endpoints intersect
            d.disjoint = false;
            break;
        }
    }
    return d;
}

namespace {

// First continued-fraction convergent a/q of alpha with q <= limit and
// |alpha - a/q| <= 1/(q limit); exists by Dirichlet.
std::pair<i64, i64> dirichlet_approx(const Rat& alpha, const mpz_class& limit) {
    const mpz_class anum = alpha.get_num(), aden = alpha.get_den();
    mpz_class p0 = 1, q0 = 0; // p_{-1}/q_{-1}
    mpz_class en = anum, ed = aden; // Euclid state
    mpz_class a, r;
    mpz_fdiv_qr(a.get_mpz_t(), r.get_mpz_t(), en.get_mpz_t(), ed.get_mpz_t());
    mpz_class p1 = a, q1 = 1;
    while (true) {
        if (q1 > limit) break;
        // |alpha - p1/q1| <= 1/(q1*limit)  <=>  |anum*q1 - p1*aden| * limit <= aden
        mpz_class diff = abs(anum * q1 - p1 * aden);
        if (diff * limit <= aden)
            return {static_cast<i64>(p1.get_si()), static_cast<i64>(q1.get_si())};
        if (r == 0) break;
        en = ed;
        ed = r;
        mpz_fdiv_qr(a.get_mpz_t(), r.get_mpz_t(), en.get_mpz_t(), ed.get_mpz_t());
        mpz_class p2 = a * p1 + p0, q2 = a * q1 + q0;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
    }
    return {0, 0};
}

} // namespace

ArcLocation locate_arc(const ArcDissection& d, const Rat& alpha) {
    if (alpha < d.ambientLo || alpha > d.ambientHi)
        throw std::invalid_argument("locate_arc: alpha outside the ambient interval");
    ArcLocation loc;

    auto it = std::upper_bound(d.arcs.begin(), d.arcs.end(), alpha,
                               [](const Rat& v, const Arc& arc) { return v < arc.center; });
    auto contains = [&](const Arc& arc) {
        Rat delta = alpha - arc.center;
        if (delta < 0) delta = -delta;
        return delta <= arc.halfwidth;
    };
    if (it != d.arcs.end() && contains(*it)) {
        loc.major = true;
        loc.q = it->q;
        loc.a = it->a;
    } else if (it != d.arcs.begin() && contains(*(it - 1))) {
        loc.major = true;
        loc.q = (it - 1)->q;
        loc.a = (it - 1)->a;
    }

    mpz_class limit = d.X.get_num() / d.X.get_den();
    auto [da, dq] = dirichlet_approx(alpha, limit);
    loc.dirichlet_a = da;
    loc.dirichlet_q = dq;
    return loc;
}

Rat min_norm_sum(const Rat& alpha, const Rat& X) {
    if (X < 1) throw std::invalid_argument("min_norm_sum: X must be >= 1");
    mpz_class xmaxz = X.get_num() / X.get_den();
    const i64 xmax = static_cast<i64>(xmaxz.get_si());
    Rat total = X; // x = 0 term
    for (i64 x = 1; x <= xmax; ++x) {
        Rat v = alpha * static_cast<long>(x);
        // ||v||: distance to the nearest integer
        mpz_class fl;
        mpz_fdiv_q(fl.get_mpz_t(), v.get_num().get_mpz_t(), v.get_den().get_mpz_t());
        Rat frac = v - Rat(fl);
        Rat comp = Rat(1) - frac;
        Rat dist = frac < comp ? frac : comp;
        Rat term;
        if (sgn(dist) == 0) {
            term = X;
        } else {
            Rat inv = Rat(1) / dist;
            term = inv < X ? inv : X;
        }
        total += 2 * term; // +x and -x have equal norms
    }
    return total;
}

namespace {

// frac(r * k) for integer k, returned as double in [0,1).
double frac_of_scaled(const Rat& r, const mpz_class& k) {
    mpz_class num = r.get_num() * k;
    mpz_class m;
    mpz_fdiv_r(m.get_mpz_t(), num.get_mpz_t(), r.get_den().get_mpz_t());
    return mpq_class(m, r.get_den()).get_d();
}

} // namespace

std::complex<double> lambda_sum_1d(const Rat& d, const Rat& alpha, const Rat& beta, i64 X,
                                   const LambdaTable& table) {
    if (sgn(d) == 0) throw std::invalid_argument("lambda_sum_1d: d must be nonzero");
    if (X > table.limit()) throw std::invalid_argument("lambda_sum_1d: X beyond table");
    const Rat ad = alpha * d;
    std::complex<double> sum = 0;
    for (i64 x : table.prime_powers()) {
        if (x > X) break;
        mpz_class xz(static_cast<long>(x));
        double ph = frac_of_scaled(ad, xz * xz) + frac_of_scaled(beta, xz);
        double ang = 2.0 * std::numbers::pi * ph;
        sum += table.lambda(x) * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    return sum;
}

std::complex<double> s_alpha_small(const QuadraticForm& form, const Rat& alpha, i64 X,
                                   const LambdaTable& table, double budget) {
    const std::size_t n = form.n();
    std::vector<i64> pps;
    for (i64 x : table.prime_powers()) {
        if (x > X) break;
        pps.push_back(x);
    }
    if (std::pow(static_cast<double>(pps.size()), static_cast<double>(n)) > budget)
        throw BudgetExceeded("s_alpha_small: enumeration budget exceeded");

    const IntMatrix& a = form.matrix();
    std::vector<i64> x(n);
    std::complex<double> sum = 0;
    const mpz_class den = alpha.get_den();
    const mpz_class num = alpha.get_num();
    auto rec = [&](auto&& self, std::size_t d) -> void {
        if (d == n) {
            i64 f = form.evaluate(x);
            mpz_class fz(static_cast<long>(f));
            mpz_class m;
            mpz_fdiv_r(m.get_mpz_t(), mpz_class(num * fz).get_mpz_t(), den.get_mpz_t());
            double ph = mpq_class(m, den).get_d();
            double ang = 2.0 * std::numbers::pi * ph;
            double w = 1.0;
            for (std::size_t i = 0; i < n; ++i) w *= table.lambda(x[i]);
            sum += w * std::complex<double>(std::cos(ang), std::sin(ang));
            return;
        }
        for (i64 v : pps) {
            x[d] = v;
            self(self, d + 1);
        }
    };
    rec(rec, 0);
    return sum;
}

std::pair<double, double> bilinear_check(const std::vector<std::complex<double>>& xi,
                                         const Rat& alpha, i64 X) {
    if (X < 1 || X > 200) throw std::invalid_argument("bilinear_check: brute force guarded at X <= 200");
    if (xi.size() != static_cast<std::size_t>(2 * X + 1))
        throw std::invalid_argument("bilinear_check: xi must cover z in [-X, X]");
    for (const auto& v : xi)
        if (std::abs(v) > 1.0 + 1e-12)
            throw std::invalid_argument("bilinear_check: |xi_z| must be <= 1");

    double lhs = 0.0;
    for (i64 y = -X; y <= X; ++y) {
        double ph = frac_of_scaled(alpha, mpz_class(static_cast<long>(y)));
        double ang = 2.0 * std::numbers::pi * ph;
        std::complex<double> w(std::cos(ang), std::sin(ang)); // e(alpha y)
        // walk z from -X to X with incremental powers of w
        std::complex<double> wz = std::pow(std::conj(w), static_cast<double>(X));
        std::complex<double> inner = 0;
        for (i64 z = -X; z <= X; ++z) {
            inner += xi[static_cast<std::size_t>(z + X)] * wz;
            wz *= w;
        }
        lhs += std::norm(inner);
    }
    double rhs = static_cast<double>(X) * min_norm_sum(alpha, Rat(static_cast<long>(X))).get_d();
    return {lhs, rhs};
}

Rat measure_union(std::vector<std::pair<Rat, Rat>> intervals) {
    std::sort(intervals.begin(), intervals.end(),
              [](const auto& l, const auto& r) { return l.first < r.first; });
    Rat total = 0;
    bool open = false;
    Rat curLo, curHi;
    for (const auto& [lo, hi] : intervals) {
        if (hi < lo) continue;
        if (!open) {
            curLo = lo;
            curHi = hi;
            open = true;
        } else if (lo <= curHi) {
            if (hi > curHi) curHi = hi;
        } else {
            total += curHi - curLo;
            curLo = lo;
            curHi = hi;
        }
    }
    if (open) total += curHi - curLo;
    return total;
}

Rat measure_difference(const std::vector<std::pair<Rat, Rat>>& a,
                       const std::vector<std::pair<Rat, Rat>>& b) {
    // merge B, then sweep each A interval against it
    std::vector<std::pair<Rat, Rat>> bs = b;
    std::sort(bs.begin(), bs.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
    std::vector<std::pair<Rat, Rat>> merged;
    for (const auto& iv : bs) {
        if (!merged.empty() && iv.first <= merged.back().second) {
            if (iv.second > merged.back().second) merged.back().second = iv.second;
        } else {
            merged.push_back(iv);
        }
    }
    // measure of A-union minus measure of (A-union intersect B-union)
    std::vector<std::pair<Rat, Rat>> as = a;
    std::sort(as.begin(), as.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
    std::vector<std::pair<Rat, Rat>> amerged;
    for (const auto& iv : as) {
        if (!amerged.empty() && iv.first <= amerged.back().second) {
            if (iv.second > amerged.back().second) amerged.back().second = iv.second;
        } else {
            amerged.push_back(iv);
        }
    }
    Rat inter = 0;
    for (const auto& [alo, ahi] : amerged) {
        for (const auto& [blo, bhi] : merged) {
            Rat lo = std::max(alo, blo);
            Rat hi = std::min(ahi, bhi);
            if (lo < hi) inter += hi - lo;
        }
    }
    return measure_union(amerged) - inter;
}

std::vector<std::pair<Rat, Rat>> arc_intervals(const ArcDissection& d) {
    std::vector<std::pair<Rat, Rat>> ivs;
    ivs.reserve(d.arcs.size());
    for (const Arc& arc : d.arcs)
        ivs.emplace_back(arc.center - arc.halfwidth, arc.center + arc.halfwidth);
    return ivs;
}

} // namespace qpc
