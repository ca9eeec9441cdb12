#ifndef QPC_INTMATRIX_HPP
#define QPC_INTMATRIX_HPP

#include <cstddef>
#include <vector>

#include "qpc/ints.hpp"

namespace qpc {

// Dense integer matrix with exact rank machinery. Entries are 64-bit;
// elimination runs fraction-free over 128-bit accumulators and falls back to
// arbitrary precision if an intermediate minor overflows.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols, 0) {}

    static IntMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    i64& at(std::size_t i, std::size_t j);
    i64 at(std::size_t i, std::size_t j) const;

    i64& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    i64 operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    bool is_symmetric() const;

    IntMatrix transposed() const;
    IntMatrix submatrix(const std::vector<std::size_t>& rowSet,
                        const std::vector<std::size_t>& colSet) const;

    bool operator==(const IntMatrix&) const = default;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<i64> a_;
};

// Rank over the rationals by fraction-free (Bareiss) elimination; exact.
std::size_t rank_exact(const IntMatrix& m);

// Rank of the minor selected by rowSet x colSet. Empty index sets give 0.
std::size_t submatrix_rank(const IntMatrix& m,
                           const std::vector<std::size_t>& rowSet,
                           const std::vector<std::size_t>& colSet);

// Exact determinant of a square matrix (arbitrary-precision fallback inside);
// returns only the sign/zero information needed by callers that probe
// invertibility of small minors.
bool is_nonsingular(const IntMatrix& m);

// P^T A P for the permutation given as perm[newIndex] = oldIndex is NOT the
// convention here: result(i,j) = a(perm[i], perm[j]). Requires a symmetric
// square input and a bijective perm.
IntMatrix permute_congruent(const IntMatrix& a, const std::vector<std::size_t>& perm);

} // namespace qpc

#endif
