#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <gmpxx.h>

#include <random>

#include "qpc/intmatrix.hpp"

using namespace qpc;

namespace {

// Independent oracle: plain rational row reduction, no fraction-free tricks.
std::size_t oracle_rank(const IntMatrix& m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    std::vector<std::vector<mpq_class>> w(rows, std::vector<mpq_class>(cols));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) w[i][j] = static_cast<long>(m(i, j));
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t piv = rank;
        while (piv < rows && sgn(w[piv][col]) == 0) ++piv;
        if (piv == rows) continue;
        std::swap(w[piv], w[rank]);
        for (std::size_t i = rank + 1; i < rows; ++i) {
            if (sgn(w[i][col]) == 0) continue;
            mpq_class f = w[i][col] / w[rank][col];
            for (std::size_t j = col; j < cols; ++j) w[i][j] -= f * w[rank][j];
        }
        ++rank;
    }
    return rank;
}

IntMatrix from_rows(std::vector<std::vector<i64>> rows) {
    IntMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    return m;
}

} // namespace

TEST_CASE("rank of fixed matrices") {
    CHECK(rank_exact(IntMatrix(3, 3)) == 0);
    CHECK(rank_exact(from_rows({{1, 2}, {2, 4}})) == 1);
    // determinant -3 by cofactor expansion
    CHECK(rank_exact(from_rows({{1, 2, 3}, {4, 5, 6}, {7, 8, 10}})) == 3);
    CHECK(rank_exact(IntMatrix::identity(6)) == 6);
}

TEST_CASE("submatrix rank") {
    IntMatrix id4 = IntMatrix::identity(4);
    CHECK(submatrix_rank(id4, {0, 1}, {2, 3}) == 0);
    CHECK(submatrix_rank(id4, {0, 1}, {0, 1}) == 2);
    IntMatrix a = from_rows({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
    CHECK(submatrix_rank(a, {0}, {1, 2}) == 1);
    CHECK(submatrix_rank(a, {}, {0, 1}) == 0);
    CHECK_THROWS_AS((void)submatrix_rank(a, {5}, {0}), std::out_of_range);
}

TEST_CASE("permute_congruent") {
    IntMatrix a = from_rows({{1, 2}, {2, 3}});
    std::vector<std::size_t> idp = {0, 1};
    CHECK(permute_congruent(a, idp) == a);
    std::vector<std::size_t> swap = {1, 0};
    CHECK(permute_congruent(a, swap) == from_rows({{3, 2}, {2, 1}}));
    CHECK_THROWS_AS((void)permute_congruent(a, {0, 0}), std::invalid_argument);
    CHECK_THROWS_AS((void)permute_congruent(from_rows({{1, 2}, {3, 4}}), idp),
                    std::invalid_argument);
}

TEST_CASE("properties against the rational oracle") {
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 1000; ++trial) {
        std::size_t rows = 1 + rng() % 8, cols = 1 + rng() % 8;
        IntMatrix m(rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j)
                m(i, j) = static_cast<i64>(rng() % 19) - 9;
        std::size_t r = rank_exact(m);
        CHECK(r == oracle_rank(m));
        CHECK(r == rank_exact(m.transposed()));
    }
}

TEST_CASE("rank invariant under congruent permutation") {
    std::mt19937_64 rng(202);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t n = 2 + rng() % 7;
        IntMatrix a(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) a(i, j) = a(j, i) = static_cast<i64>(rng() % 19) - 9;
        std::vector<std::size_t> perm(n);
        for (std::size_t i = 0; i < n; ++i) perm[i] = i;
        std::shuffle(perm.begin(), perm.end(), rng);
        IntMatrix b = permute_congruent(a, perm);
        CHECK(b.is_symmetric());
        CHECK(rank_exact(b) == rank_exact(a));
    }
}

TEST_CASE("submatrix rank bounded by set sizes and full rank") {
    std::mt19937_64 rng(303);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t n = 3 + rng() % 6;
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m(i, j) = static_cast<i64>(rng() % 7) - 3;
        std::vector<std::size_t> rows, cols;
        for (std::size_t i = 0; i < n; ++i) {
            if (rng() & 1) rows.push_back(i);
            if (rng() & 1) cols.push_back(i);
        }
        std::size_t r = submatrix_rank(m, rows, cols);
        CHECK(r <= std::min(rows.size(), cols.size()));
        CHECK(r <= rank_exact(m));
    }
}

TEST_CASE("large entries take the arbitrary-precision fallback") {
    // entries near 2^31 force minors past 128 bits by n = 8
    std::mt19937_64 rng(404);
    IntMatrix m(8, 8);
    for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t j = 0; j < 8; ++j)
            m(i, j) = static_cast<i64>(rng() % (i64{1} << 31)) - (i64{1} << 30);
    CHECK(rank_exact(m) == oracle_rank(m));
}
