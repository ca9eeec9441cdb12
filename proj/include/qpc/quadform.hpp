#ifndef QPC_QUADFORM_HPP
#define QPC_QUADFORM_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "qpc/intmatrix.hpp"

namespace qpc {

// Integral quadratic form f(x) = x^T A x with a symmetric matrix A.
// Immutable; rank and off-diagonal rank are cached lazily behind const access.
class QuadraticForm {
public:
    explicit QuadraticForm(IntMatrix a);

    std::size_t n() const { return a_.rows(); }
    const IntMatrix& matrix() const { return a_; }

    std::size_t rank() const;

    // Exact x^T A x.
    i64 evaluate(std::span<const i64> x) const;

    bool is_diagonal() const;

    // FNV-1a over the entries; used to tag reports.
    u64 digest() const;

    // off-diagonal-rank cache, managed by off_diagonal_rank()
    mutable std::optional<std::size_t> cached_off_rank;

private:
    IntMatrix a_;
    mutable std::optional<std::size_t> rank_;
};

} // namespace qpc

#endif
