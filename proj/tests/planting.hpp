// Shared constructors for matrices planted in the four decomposition shapes.
// Each plant draws sparse random blocks in the target shape, then verifies the
// case hypotheses with the enumeration primitives (rank, off-diagonal rank,
// B-block ranks, absence of a good 5x5 minor) and redraws until they hold, so
// the classifier under test never feeds its own answer back into the data.
// The planted block sits at rows {0,1,2} x cols {3,4,5} with B_k ranks already
// ascending, which is exactly the classifier's canonical arrangement; clean
// plants therefore classify with an identity permutation.
#ifndef QPC_TESTS_PLANTING_HPP
#define QPC_TESTS_PLANTING_HPP

#include <algorithm>
#include <array>
#include <random>
#include <stdexcept>
#include <vector>

#include "qpc/classify.hpp"
#include "qpc/quadform.hpp"

namespace planting {

using qpc::i64;
using qpc::IntMatrix;
using qpc::QuadraticForm;

struct Planted {
    IntMatrix matrix;
    std::vector<i64> plantedD; // diagonal planted in the trailing block
};

inline i64 draw(std::mt19937_64& rng, i64 lo, i64 hi) {
    return lo + static_cast<i64>(rng() % static_cast<qpc::u64>(hi - lo + 1));
}

inline void fill_symmetric(IntMatrix& m, std::size_t lo, std::size_t hi, std::mt19937_64& rng,
                           i64 bound) {
    for (std::size_t i = lo; i < hi; ++i)
        for (std::size_t j = i; j < hi; ++j) m(i, j) = m(j, i) = draw(rng, -bound, bound);
}

// hypotheses shared by every OffRank3 case, checked at the planted position
inline bool hypotheses_hold(const IntMatrix& a, const std::array<std::size_t, 3>& wantBRanks) {
    QuadraticForm f{a};
    if (f.rank() < 9) return false;
    if (qpc::submatrix_rank(a, {0, 1, 2}, {3, 4, 5}) != 3) return false;
    if (qpc::find_good_minor5(f)) return false;
    qpc::OffRankWitness off = qpc::off_diagonal_rank(f);
    if (off.rank != 3) return false;
    std::array<std::size_t, 3> got{};
    for (int k = 1; k <= 3; ++k) {
        std::vector<std::size_t> cols;
        for (std::size_t j = 3; j < a.rows(); ++j)
            if (j != static_cast<std::size_t>(2 + k)) cols.push_back(j);
        got[static_cast<std::size_t>(k - 1)] = qpc::submatrix_rank(a, {0, 1, 2}, cols);
    }
    return got == wantBRanks; // plants lay the ranks out ascending already
}

// [[A1, B, 0], [B^T, A2, C], [0, C^T, D]]; B = I3, C supported on one row.
inline Planted plant_l51(std::mt19937_64& rng, std::size_t n = 10) {
    for (int attempt = 0; attempt < 2000; ++attempt) {
        IntMatrix a(n, n);
        fill_symmetric(a, 0, 3, rng, 2);
        for (std::size_t i = 0; i < 3; ++i) a(i, 3 + i) = a(3 + i, i) = 1;
        for (std::size_t i = 3; i < 6; ++i)
            for (std::size_t j = i; j < 6; ++j) a(i, j) = a(j, i) = draw(rng, -2, 2);
        const std::size_t crow = 3 + static_cast<std::size_t>(draw(rng, 0, 2));
        for (std::size_t j = 6; j < n; ++j) {
            i64 v = draw(rng, -2, 2);
            a(crow, j) = a(j, crow) = v;
        }
        std::vector<i64> d(n - 6);
        for (std::size_t j = 6; j < n; ++j) {
            d[j - 6] = draw(rng, 1, 3) * (draw(rng, 0, 1) ? 1 : -1);
            a(j, j) = d[j - 6];
        }
        if (hypotheses_hold(a, {2, 2, 2})) return {a, d};
    }
    throw std::runtime_error("plant_l51: no valid instance found");
}

// [[A1, C, g3 xi^T], [C^T, A2, V], [xi g3^T, V^T, D + h xi xi^T]]
inline Planted plant_l52(std::mt19937_64& rng, std::size_t n = 10) {
    const std::size_t zn = n - 5;
    for (int attempt = 0; attempt < 2000; ++attempt) {
        IntMatrix a(n, n);
        fill_symmetric(a, 0, 3, rng, 2);
        // gamma1, gamma2 at cols 3,4; gamma3 enters through the z block
        std::vector<std::vector<i64>> g(3, std::vector<i64>(3, 0));
        g[0][0] = 1;
        g[1][1] = 1;
        g[2][2] = 1;
        g[static_cast<std::size_t>(draw(rng, 0, 1))][2] = draw(rng, -1, 1);
        g[2][2] = 1; // keep gamma3 anchored
        for (std::size_t i = 0; i < 3; ++i) {
            a(i, 3) = a(3, i) = g[i][0];
            a(i, 4) = a(4, i) = g[i][1];
        }
        std::vector<i64> xi(zn, 0);
        xi[0] = 1;
        xi[1] = draw(rng, 1, 2);
        if (zn > 2 && draw(rng, 0, 1)) xi[2] = draw(rng, -2, 2);
        for (std::size_t j = 0; j < zn; ++j)
            for (std::size_t i = 0; i < 3; ++i) a(i, 5 + j) = a(5 + j, i) = g[i][2] * xi[j];
        fill_symmetric(a, 3, 5, rng, 2);
        // V: one sparse row keeps the off-diagonal rank down
        for (std::size_t j = 0; j < zn; ++j) {
            i64 v = (draw(rng, 0, 2) == 0) ? draw(rng, -1, 1) : 0;
            a(3, 5 + j) = a(5 + j, 3) = v;
        }
        const i64 h = draw(rng, -1, 1);
        std::vector<i64> d(zn);
        for (std::size_t i = 0; i < zn; ++i) d[i] = draw(rng, 1, 3) * (draw(rng, 0, 1) ? 1 : -1);
        for (std::size_t i = 0; i < zn; ++i)
            for (std::size_t j = 0; j < zn; ++j)
                a(5 + i, 5 + j) = h * xi[i] * xi[j] + (i == j ? d[i] : 0);
        if (hypotheses_hold(a, {2, 2, 3})) return {a, d};
    }
    throw std::runtime_error("plant_l52: no valid instance found");
}

// [[A1, g1, (g2,g3)C], [g1^T, s, v^T], [C^T(g2,g3)^T, v, D + C^T H C]]
// forceCaseII zeroes v so only statement (ii) of the witness lemma can apply.
inline Planted plant_l53(std::mt19937_64& rng, std::size_t n = 10, bool forceCaseII = false) {
    const std::size_t zn = n - 4;
    for (int attempt = 0; attempt < 2000; ++attempt) {
        IntMatrix a(n, n);
        fill_symmetric(a, 0, 3, rng, 2);
        a(0, 3) = a(3, 0) = 1; // g1 = e1
        a(3, 3) = draw(rng, -2, 2);
        std::vector<std::vector<i64>> c(2, std::vector<i64>(zn, 0));
        c[0][0] = 1;
        c[1][1] = 1;
        c[0][2] = 1;
        c[1][2] = 1;
        if (zn > 3 && draw(rng, 0, 1))
            c[static_cast<std::size_t>(draw(rng, 0, 1))][3] = draw(rng, -1, 1);
        for (std::size_t j = 0; j < zn; ++j) {
            a(1, 4 + j) = a(4 + j, 1) = c[0][j]; // g2 = e2
            a(2, 4 + j) = a(4 + j, 2) = c[1][j]; // g3 = e3
        }
        std::vector<i64> ups(zn, 0);
        if (!forceCaseII) {
            ups[static_cast<std::size_t>(draw(rng, 0, static_cast<i64>(zn) - 1))] = draw(rng, 1, 2);
        }
        for (std::size_t j = 0; j < zn; ++j) a(3, 4 + j) = a(4 + j, 3) = ups[j];
        std::vector<std::vector<i64>> hm(2, std::vector<i64>(2));
        hm[0][0] = draw(rng, -1, 1);
        hm[1][1] = draw(rng, -1, 1);
        hm[0][1] = hm[1][0] = draw(rng, -1, 1);
        std::vector<i64> d(zn, 0);
        for (std::size_t i = 0; i < zn; ++i) d[i] = draw(rng, 1, 3) * (draw(rng, 0, 1) ? 1 : -1);
        for (std::size_t i = 0; i < zn; ++i)
            for (std::size_t j = 0; j < zn; ++j) {
                i64 chc = 0;
                for (int r = 0; r < 2; ++r)
                    for (int s = 0; s < 2; ++s) chc += c[r][i] * hm[r][s] * c[s][j];
                a(4 + i, 4 + j) = chc + (i == j ? d[i] : 0);
            }
        if (hypotheses_hold(a, {2, 3, 3})) return {a, d};
    }
    throw std::runtime_error("plant_l53: no valid instance found");
}

// [[A1, Gamma C], [C^T Gamma^T, D + C^T H C]] with Gamma = I3, C = [I3 | C'].
inline Planted plant_l54(std::mt19937_64& rng, std::size_t n = 9) {
    const std::size_t zn = n - 3;
    for (int attempt = 0; attempt < 2000; ++attempt) {
        IntMatrix a(n, n);
        fill_symmetric(a, 0, 3, rng, 2);
        std::vector<std::vector<i64>> c(3, std::vector<i64>(zn, 0));
        c[0][0] = c[1][1] = c[2][2] = 1;
        if (zn > 3) c[0][3] = c[1][3] = c[2][3] = 1; // keeps every B_k at rank 3
        if (zn > 4 && draw(rng, 0, 1))
            c[static_cast<std::size_t>(draw(rng, 0, 2))][4] = draw(rng, -1, 1);
        for (std::size_t j = 0; j < zn; ++j)
            for (std::size_t i = 0; i < 3; ++i) a(i, 3 + j) = a(3 + j, i) = c[i][j];
        std::vector<std::vector<i64>> hm(3, std::vector<i64>(3));
        for (int r = 0; r < 3; ++r)
            for (int s = r; s < 3; ++s) hm[r][s] = hm[s][r] = draw(rng, -1, 1);
        // exactly three nonzero d's, placed beyond the identity columns
        std::vector<i64> d(zn, 0);
        for (std::size_t i = 3; i < std::min<std::size_t>(6, zn); ++i)
            d[i] = draw(rng, 1, 3) * (draw(rng, 0, 1) ? 1 : -1);
        for (std::size_t i = 0; i < zn; ++i)
            for (std::size_t j = 0; j < zn; ++j) {
                i64 chc = 0;
                for (int r = 0; r < 3; ++r)
                    for (int s = 0; s < 3; ++s) chc += c[r][i] * hm[r][s] * c[s][j];
                a(3 + i, 3 + j) = chc + (i == j ? d[i] : 0);
            }
        if (hypotheses_hold(a, {3, 3, 3})) return {a, d};
    }
    throw std::runtime_error("plant_l54: no valid instance found");
}

inline IntMatrix scrambled(const IntMatrix& a, std::mt19937_64& rng) {
    std::vector<std::size_t> perm(a.rows());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    return qpc::permute_congruent(a, perm);
}

} // namespace planting

#endif
