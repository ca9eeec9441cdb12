#include "qpc/intmatrix.hpp"

#include <gmpxx.h>

#include <stdexcept>

#include "qpc/errors.hpp"

namespace qpc {

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

i64& IntMatrix::at(std::size_t i, std::size_t j) {
    if (i >= rows_ || j >= cols_) throw std::out_of_range("IntMatrix::at: index out of range");
    return a_[i * cols_ + j];
}

i64 IntMatrix::at(std::size_t i, std::size_t j) const {
    if (i >= rows_ || j >= cols_) throw std::out_of_range("IntMatrix::at: index out of range");
    return a_[i * cols_ + j];
}

bool IntMatrix::is_symmetric() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i + 1; j < cols_; ++j)
            if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
}

IntMatrix IntMatrix::transposed() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

IntMatrix IntMatrix::submatrix(const std::vector<std::size_t>& rowSet,
                               const std::vector<std::size_t>& colSet) const {
    IntMatrix s(rowSet.size(), colSet.size());
    for (std::size_t i = 0; i < rowSet.size(); ++i)
        for (std::size_t j = 0; j < colSet.size(); ++j) s(i, j) = at(rowSet[i], colSet[j]);
    return s;
}

namespace {

struct Overflow128 {};

// Element ops for the two elimination backends.
struct I128Ops {
    using T = i128;
    static T from(i64 v) { return v; }
    static bool is_zero(const T& v) { return v == 0; }
    // (a*b - c*d) / e, throwing Overflow128 if the products leave 128 bits.
    static T fuse(const T& a, const T& b, const T& c, const T& d, const T& e) {
        i128 p, q, r;
        if (mul_overflows(a, b, p) || mul_overflows(c, d, q) || sub_overflows(p, q, r))
            throw Overflow128{};
        return r / e;
    }
};

struct MpzOps {
    using T = mpz_class;
    static T from(i64 v) {
        // mpz_class has no long long ctor on LP64? long is 64-bit here.
        return mpz_class(static_cast<long>(v));
    }
    static bool is_zero(const T& v) { return sgn(v) == 0; }
    static T fuse(const T& a, const T& b, const T& c, const T& d, const T& e) {
        mpz_class r = a * b - c * d;
        mpz_class q;
        mpz_divexact(q.get_mpz_t(), r.get_mpz_t(), e.get_mpz_t());
        return q;
    }
};

// Fraction-free elimination; the division in the update step is exact by the
// Sylvester identity, with zero columns skipped. Pivot: first nonzero in
// column order.
template <typename Ops>
std::size_t bareiss_rank(const IntMatrix& m) {
    using T = typename Ops::T;
    const std::size_t rows = m.rows(), cols = m.cols();
    std::vector<T> w(rows * cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) w[i * cols + j] = Ops::from(m(i, j));

    std::size_t rank = 0;
    T prev = Ops::from(1);
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t piv = rank;
        while (piv < rows && Ops::is_zero(w[piv * cols + col])) ++piv;
        if (piv == rows) continue;
        if (piv != rank)
            for (std::size_t j = 0; j < cols; ++j)
                std::swap(w[rank * cols + j], w[piv * cols + j]);
        const T& p = w[rank * cols + col];
        for (std::size_t i = rank + 1; i < rows; ++i) {
            for (std::size_t j = col + 1; j < cols; ++j)
                w[i * cols + j] =
                    Ops::fuse(w[i * cols + j], p, w[i * cols + col], w[rank * cols + j], prev);
            w[i * cols + col] = Ops::from(0);
        }
        prev = p;
        ++rank;
    }
    return rank;
}

} // namespace

std::size_t rank_exact(const IntMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    try {
        return bareiss_rank<I128Ops>(m);
    } catch (const Overflow128&) {
        return bareiss_rank<MpzOps>(m);
    }
}

std::size_t submatrix_rank(const IntMatrix& m,
                           const std::vector<std::size_t>& rowSet,
                           const std::vector<std::size_t>& colSet) {
    if (rowSet.empty() || colSet.empty()) return 0;
    for (std::size_t r : rowSet)
        if (r >= m.rows()) throw std::out_of_range("submatrix_rank: row index out of range");
    for (std::size_t c : colSet)
        if (c >= m.cols()) throw std::out_of_range("submatrix_rank: col index out of range");
    return rank_exact(m.submatrix(rowSet, colSet));
}

bool is_nonsingular(const IntMatrix& m) {
    if (m.rows() != m.cols()) return false;
    return rank_exact(m) == m.rows();
}

IntMatrix permute_congruent(const IntMatrix& a, const std::vector<std::size_t>& perm) {
    if (!a.is_symmetric()) throw std::invalid_argument("permute_congruent: matrix not symmetric");
    const std::size_t n = a.rows();
    if (perm.size() != n) throw std::invalid_argument("permute_congruent: permutation size mismatch");
    std::vector<bool> seen(n, false);
    for (std::size_t p : perm) {
        if (p >= n || seen[p]) throw std::invalid_argument("permute_congruent: not a bijection");
        seen[p] = true;
    }
    IntMatrix r(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) r(i, j) = a(perm[i], perm[j]);
    return r;
}

} // namespace qpc
