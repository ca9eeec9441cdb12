#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "planting.hpp"
#include "qpc/classify.hpp"
#include "qpc/errors.hpp"
#include "qpc/quadform.hpp"

using namespace qpc;

namespace {

IntMatrix from_rows(std::vector<std::vector<i64>> rows) {
    IntMatrix m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    return m;
}

IntMatrix all_ones(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = 1;
    return m;
}

// n=9, ones at (i, i+4) for i = 0..4, identity diagonal: the G = I5 layout
IntMatrix shifted_band9() {
    IntMatrix m = IntMatrix::identity(9);
    for (std::size_t i = 0; i < 5; ++i) m(i, i + 4) = m(i + 4, i) = 1;
    return m;
}

} // namespace

TEST_CASE("evaluate") {
    QuadraticForm id2{IntMatrix::identity(2)};
    std::vector<i64> x{1, 2};
    CHECK(id2.evaluate(x) == 5);
    QuadraticForm cross{from_rows({{0, 1}, {1, 0}})};
    std::vector<i64> y{3, 4};
    CHECK(cross.evaluate(y) == 24);
    QuadraticForm id5{IntMatrix::identity(5)};
    std::vector<i64> ones{1, 1, 1, 1, 1};
    CHECK(id5.evaluate(ones) == 5);
    CHECK(id5.evaluate(ones) % 24 == 5);
    std::vector<i64> bad{1, 2};
    CHECK_THROWS_AS((void)id5.evaluate(bad), std::invalid_argument);
}

TEST_CASE("off_diagonal_rank fixed cases") {
    QuadraticForm diag{IntMatrix::identity(7)};
    CHECK(off_diagonal_rank(diag).rank == 0);

    QuadraticForm ones{all_ones(9)};
    CHECK(off_diagonal_rank(ones).rank == 1);

    IntMatrix m = IntMatrix::identity(9);
    m(0, 4) = m(4, 0) = 1; // a_{1,5} in 1-based labels
    QuadraticForm f{m};
    OffRankWitness w = off_diagonal_rank(f);
    CHECK(w.rank == 1);
    CHECK(submatrix_rank(m, w.rowSet, w.colSet) == 1);

    IntMatrix big(15, 15);
    CHECK_THROWS_AS((void)off_diagonal_rank(QuadraticForm{big}), UnsupportedSize);
}

TEST_CASE("off_diagonal_rank invariant under simultaneous permutation") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 30; ++trial) {
        std::size_t n = 5 + rng() % 5;
        IntMatrix a(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) a(i, j) = a(j, i) = static_cast<i64>(rng() % 5) - 2;
        std::vector<std::size_t> perm(n);
        for (std::size_t i = 0; i < n; ++i) perm[i] = i;
        std::shuffle(perm.begin(), perm.end(), rng);
        QuadraticForm f{a};
        QuadraticForm g{permute_congruent(a, perm)};
        CHECK(off_diagonal_rank(f).rank == off_diagonal_rank(g).rank);
        CHECK(off_diagonal_rank(f).rank <= f.rank());
    }
}

TEST_CASE("find_good_minor5") {
    QuadraticForm band{shifted_band9()};
    auto minor = find_good_minor5(band);
    REQUIRE(minor.has_value());
    CHECK(submatrix_rank(band.matrix(), minor->first, minor->second) == 5);
    // overlap at most 1
    std::size_t overlap = 0;
    for (std::size_t r : minor->first)
        for (std::size_t c : minor->second)
            if (r == c) ++overlap;
    CHECK(overlap <= 1);

    QuadraticForm diag{IntMatrix::identity(9)};
    CHECK_FALSE(find_good_minor5(diag).has_value());
    QuadraticForm ones{all_ones(9)};
    CHECK_FALSE(find_good_minor5(ones).has_value());
}

TEST_CASE("classify fixed cases") {
    CHECK(classify(QuadraticForm{IntMatrix::identity(9)}).caseTag == CaseTag::OffRank0);
    CHECK(classify(QuadraticForm{shifted_band9()}).caseTag == CaseTag::GoodMinor);
    CHECK(classify(QuadraticForm{IntMatrix::identity(8)}).caseTag == CaseTag::HypothesesUnmet);
    CHECK(classify(QuadraticForm{all_ones(9)}).caseTag == CaseTag::HypothesesUnmet);

    // one off-diagonal pair on top of I9, diagonal bumped to keep rank 9
    IntMatrix m1 = IntMatrix::identity(9);
    m1(0, 4) = m1(4, 0) = 1;
    m1(4, 4) = 2;
    REQUIRE(QuadraticForm{m1}.rank() == 9);
    CHECK(classify(QuadraticForm{m1}).caseTag == CaseTag::OffRank1);

    // two disjoint pairs
    IntMatrix m2 = IntMatrix::identity(10);
    m2(0, 4) = m2(4, 0) = 1;
    m2(4, 4) = 2;
    m2(1, 5) = m2(5, 1) = 1;
    m2(5, 5) = 2;
    REQUIRE(QuadraticForm{m2}.rank() == 10);
    CHECK(classify(QuadraticForm{m2}).caseTag == CaseTag::OffRank2);
}

TEST_CASE("planted decomposition shapes round-trip") {
    std::mt19937_64 rng(2024);

    SUBCASE("L51") {
        planting::Planted p = planting::plant_l51(rng);
        QuadraticForm f{p.matrix};
        ClassificationReport rep = classify(f);
        REQUIRE(rep.caseTag == CaseTag::OffRank3_L51);
        CHECK(rep.bRanks == std::array<std::size_t, 3>{2, 2, 2});
        VerificationResult ver = verify_structure(f, rep);
        REQUIRE(ver.pass);
        REQUIRE(ver.factors.D.size() == p.plantedD.size());
        for (std::size_t i = 0; i < p.plantedD.size(); ++i)
            CHECK(ver.factors.D[i] == Rat(static_cast<long>(p.plantedD[i])));
    }

    SUBCASE("L52") {
        planting::Planted p = planting::plant_l52(rng);
        QuadraticForm f{p.matrix};
        ClassificationReport rep = classify(f);
        REQUIRE(rep.caseTag == CaseTag::OffRank3_L52);
        VerificationResult ver = verify_structure(f, rep);
        REQUIRE(ver.pass);
        for (std::size_t i = 0; i < p.plantedD.size(); ++i)
            CHECK(ver.factors.D[i] == Rat(static_cast<long>(p.plantedD[i])));
    }

    SUBCASE("L53 with case-i witness") {
        planting::Planted p = planting::plant_l53(rng);
        QuadraticForm f{p.matrix};
        ClassificationReport rep = classify(f);
        REQUIRE(rep.caseTag == CaseTag::OffRank3_L53);
        VerificationResult ver = verify_structure(f, rep);
        REQUIRE(ver.pass);
        WitnessIndices w = select_witnesses(f, rep);
        CHECK((w.kind == WitnessKind::L511_case_i || w.kind == WitnessKind::L511_case_ii));
        for (const Rat& d : w.auxiliary) CHECK(sgn(d) != 0);
    }

    SUBCASE("L53 forced case-ii witness") {
        planting::Planted p = planting::plant_l53(rng, 10, /*forceCaseII=*/true);
        QuadraticForm f{p.matrix};
        ClassificationReport rep = classify(f);
        REQUIRE(rep.caseTag == CaseTag::OffRank3_L53);
        WitnessIndices w = select_witnesses(f, rep);
        CHECK(w.kind == WitnessKind::L511_case_ii);
    }

    SUBCASE("L54 with L513 witness") {
        planting::Planted p = planting::plant_l54(rng);
        QuadraticForm f{p.matrix};
        ClassificationReport rep = classify(f);
        REQUIRE(rep.caseTag == CaseTag::OffRank3_L54);
        VerificationResult ver = verify_structure(f, rep);
        REQUIRE(ver.pass);
        WitnessIndices w = select_witnesses(f, rep);
        CHECK(w.kind == WitnessKind::L513);
        REQUIRE(w.indices.size() == 6);
        // the identity columns carry the rank-3 triple; the planted d's follow
        CHECK(w.indices[0] == 0);
        CHECK(w.indices[1] == 1);
        CHECK(w.indices[2] == 2);
        for (const Rat& d : w.auxiliary) CHECK(sgn(d) != 0);
    }

    SUBCASE("scrambled plants stay in the off-rank-3 family") {
        for (int i = 0; i < 5; ++i) {
            planting::Planted p = planting::plant_l52(rng);
            QuadraticForm f{planting::scrambled(p.matrix, rng)};
            ClassificationReport rep = classify(f);
            // the case label may move inside the family (the arrangement is
            // canonical per matrix, not per plant), but the structure must hold
            REQUIRE((rep.caseTag == CaseTag::OffRank3_L51 || rep.caseTag == CaseTag::OffRank3_L52 ||
                     rep.caseTag == CaseTag::OffRank3_L53 || rep.caseTag == CaseTag::OffRank3_L54));
            CHECK(verify_structure(f, rep).pass);
        }
    }
}

TEST_CASE("verify_structure flags violations") {
    std::mt19937_64 rng(99);
    planting::Planted p = planting::plant_l51(rng);
    ClassificationReport rep = classify(QuadraticForm{p.matrix});
    REQUIRE(rep.caseTag == CaseTag::OffRank3_L51);
    // plant a corner violation at (0, 6) in the canonical coordinates
    IntMatrix broken = permute_congruent(p.matrix, rep.perm);
    broken(0, 6) = broken(6, 0) = 1;
    ClassificationReport fake = rep;
    fake.perm.clear();
    for (std::size_t i = 0; i < broken.rows(); ++i) fake.perm.push_back(i);
    VerificationResult ver = verify_structure(QuadraticForm{broken}, fake);
    CHECK_FALSE(ver.pass);
    CHECK(ver.fail_i == 0);
    CHECK(ver.fail_j == 6);
}

TEST_CASE("classifier totality on random rank >= 9 forms") {
    std::mt19937_64 rng(515);
    int done = 0;
    while (done < 60) {
        std::size_t n = 9 + rng() % 3;
        IntMatrix a(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j)
                a(i, j) = a(j, i) = static_cast<i64>(rng() % 11) - 5;
        QuadraticForm f{a};
        if (f.rank() < 9) continue;
        ++done;
        CHECK_NOTHROW((void)classify(f));
    }
}
