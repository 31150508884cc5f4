#pragma once

#include <stdexcept>
#include <string>

namespace indexlab {

/// Thrown when an exact computation is asked to exceed its configured cap
/// (vertex counts, matrix sizes, search dimensions). Maps to CLI exit 2.
struct CapExceeded : std::invalid_argument {
    explicit CapExceeded(const std::string& what) : std::invalid_argument(what) {}
};

/// Thrown when a node-count budget runs out before an exact answer is
/// certified. Maps to CLI exit 3.
struct BudgetExhausted : std::runtime_error {
    explicit BudgetExhausted(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace indexlab
