#pragma once

#include <stdexcept>
#include <string>

namespace tncr {

// Input rejected by contract (e.g. codimension 1, rank-deficient override).
struct OutOfScopeError : std::runtime_error {
    explicit OutOfScopeError(const std::string& what) : std::runtime_error(what) {}
};

// A pipeline invariant failed; always a bug or a genuinely degenerate input.
struct InternalError : std::runtime_error {
    explicit InternalError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace tncr
