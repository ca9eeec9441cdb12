#ifndef QPC_CLASSIFY_HPP
#define QPC_CLASSIFY_HPP

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qpc/quadform.hpp"
#include "qpc/ratmat.hpp"

namespace qpc {

// Which branch of the classification decision tree a form falls into.
enum class CaseTag {
    GoodMinor,
    OffRank0,
    OffRank1,
    OffRank2,
    OffRank3_L51,
    OffRank3_L52,
    OffRank3_L53,
    OffRank3_L54,
    HypothesesUnmet,
};

const char* case_tag_name(CaseTag t);

struct OffRankWitness {
    std::size_t rank = 0;
    std::vector<std::size_t> rowSet, colSet; // one attaining pair, empty when rank 0
};

struct ClassificationReport {
    CaseTag caseTag = CaseTag::HypothesesUnmet;
    std::size_t rank = 0;
    std::optional<std::size_t> offRank;          // absent for GoodMinor/HypothesesUnmet
    std::vector<std::size_t> perm;               // result(i,j) = a(perm[i],perm[j])
    std::vector<std::size_t> minorRows, minorCols; // GoodMinor witness (original indices)
    std::array<std::size_t, 3> bRanks{0, 0, 0};  // OffRank3 cases, ascending
};

// Maximal rank of a submatrix avoiding the diagonal: max over disjoint index
// sets of equal size. Exhaustive, guarded at n <= 14.
OffRankWitness off_diagonal_rank(const QuadraticForm& form);

// Searches 5x5 invertible minors whose row/col index sets overlap in at most
// one index; overlap-1 candidates first, then overlap-0. Empty if none.
std::optional<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>>
find_good_minor5(const QuadraticForm& form);

// The decision tree. Throws InvariantViolated when a state the argument rules
// out is reached (off-diagonal rank 4 with rank >= 9 and no good minor).
ClassificationReport classify(const QuadraticForm& form);

// Factors recovered by verify_structure; which fields are filled depends on
// the case.
struct StructureFactors {
    RatMatrix C;
    RatMatrix H;
    RatMatrix V;
    std::vector<Rat> D;
    std::vector<Rat> xi;
    std::vector<Rat> gamma3;
    std::vector<Rat> upsilon;
    Rat h;
};

struct VerificationResult {
    bool pass = false;
    std::size_t fail_i = 0, fail_j = 0; // first violated entry, permuted coordinates
    std::string detail;
    StructureFactors factors;
};

// Checks the decomposition the matching lemma guarantees on the permuted
// matrix, recovering the factors by exact linear solving. Only valid for the
// OffRank3_* cases.
VerificationResult verify_structure(const QuadraticForm& form, const ClassificationReport& report);

enum class WitnessKind { L511_case_i, L511_case_ii, L513 };

struct WitnessIndices {
    WitnessKind kind;
    std::vector<std::size_t> indices; // pairwise distinct column indices into C/D
    std::vector<Rat> auxiliary;       // the nonzero d values involved
};

// Exhaustive witness search for the L53/L54 cases. A witness must exist under
// the case hypotheses; absence throws InvariantViolated.
WitnessIndices select_witnesses(const QuadraticForm& form, const ClassificationReport& report);

} // namespace qpc

#endif
