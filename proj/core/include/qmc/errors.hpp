#pragma once

#include <stdexcept>

namespace qmc {

// Input/configuration problems: bad files, bad keys, violated preconditions
// a caller could have checked. CLI maps these to exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A requested computation exceeds the tool's explicit search/size budget.
// Refusal is loud, never a silent truncation. CLI maps these to exit code 3.
struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace qmc
