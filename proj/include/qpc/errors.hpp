#ifndef QPC_ERRORS_HPP
#define QPC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qpc {

// Enumeration/recursion would exceed the configured work budget.
struct BudgetExceeded : std::runtime_error {
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

// Input size beyond a documented guard (e.g. exhaustive searches over n > 14).
struct UnsupportedSize : std::runtime_error {
    explicit UnsupportedSize(const std::string& what) : std::runtime_error(what) {}
};

// A structural fact the classification argument guarantees failed to hold.
// This is never a recoverable condition: it means either the implementation
// or the input bookkeeping is wrong, and callers must not proceed silently.
struct InvariantViolated : std::logic_error {
    explicit InvariantViolated(const std::string& what) : std::logic_error(what) {}
};

// A local-density computation did not stabilize within budget.
struct NotStabilized : std::runtime_error {
    explicit NotStabilized(const std::string& what) : std::runtime_error(what) {}
};

} // namespace qpc

#endif
