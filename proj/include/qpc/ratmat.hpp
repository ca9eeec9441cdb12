#ifndef QPC_RATMAT_HPP
#define QPC_RATMAT_HPP

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <vector>

#include "qpc/intmatrix.hpp"

namespace qpc {

using Rat = mpq_class;

// Dense matrix over Q. Used by the structure verifiers, which recover
// decomposition factors by exact linear solving.
class RatMatrix {
public:
    RatMatrix() = default;
    RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    static RatMatrix from_int(const IntMatrix& m);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rat& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Rat& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    std::size_t rank() const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rat> a_;
};

// One exact solution of A x = b with free variables set to zero, or nullopt
// when the system is inconsistent.
std::optional<std::vector<Rat>> solve_exact(const RatMatrix& a, const std::vector<Rat>& b);

std::size_t rank_of_columns(const std::vector<std::vector<Rat>>& cols);

} // namespace qpc

#endif
