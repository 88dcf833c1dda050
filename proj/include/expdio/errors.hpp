#pragma once

#include <stdexcept>
#include <string>

namespace expdio {

// Raised when a configured work limit (factoring effort, certification
// precision) is exhausted before a rigorous answer was reached.
struct budget_error : std::runtime_error {
    explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a checked mathematical invariant fails. Reaching this means
// either an implementation bug or a counterexample to a proved statement;
// callers must not swallow it.
struct invariant_error : std::logic_error {
    explicit invariant_error(const std::string& what) : std::logic_error(what) {}
};

}  // namespace expdio
