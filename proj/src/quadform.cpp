#include "qpc/quadform.hpp"

#include <stdexcept>

namespace qpc {

QuadraticForm::QuadraticForm(IntMatrix a) : a_(std::move(a)) {
    if (a_.rows() == 0) throw std::invalid_argument("QuadraticForm: n must be >= 1");
    if (!a_.is_symmetric()) throw std::invalid_argument("QuadraticForm: matrix must be symmetric");
}

std::size_t QuadraticForm::rank() const {
    if (!rank_) rank_ = rank_exact(a_);
    return *rank_;
}

i64 QuadraticForm::evaluate(std::span<const i64> x) const {
    const std::size_t n = a_.rows();
    if (x.size() != n) throw std::invalid_argument("evaluate: dimension mismatch");
    i128 acc = 0;
    for (std::size_t i = 0; i < n; ++i) {
        i128 row = 0;
        for (std::size_t j = 0; j < n; ++j) row += static_cast<i128>(a_(i, j)) * x[j];
        acc += row * x[i];
    }
    if (acc > static_cast<i128>(INT64_MAX) || acc < static_cast<i128>(INT64_MIN))
        throw std::overflow_error("evaluate: value exceeds 64 bits");
    return static_cast<i64>(acc);
}

bool QuadraticForm::is_diagonal() const {
    for (std::size_t i = 0; i < n(); ++i)
        for (std::size_t j = 0; j < n(); ++j)
            if (i != j && a_(i, j) != 0) return false;
    return true;
}

u64 QuadraticForm::digest() const {
    u64 h = 1469598103934665603ULL;
    auto mix = [&h](u64 v) {
        h ^= v;
        h *= 1099511628211ULL;
    };
    mix(n());
    for (std::size_t i = 0; i < n(); ++i)
        for (std::size_t j = 0; j < n(); ++j) mix(static_cast<u64>(a_(i, j)));
    return h;
}

} // namespace qpc
