#pragma once

#include <stdexcept>
#include <string>

namespace apl {

// Numerical failures (non-convergence, inadequate coverage, lost zeros).
// Precondition violations use std::domain_error / std::invalid_argument.
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

struct ConvergenceError : NumericalError {
    explicit ConvergenceError(const std::string& what) : NumericalError(what) {}
};

// A zero/a-point list does not bracket the requested window.
struct CoverageError : NumericalError {
    explicit CoverageError(const std::string& what) : NumericalError(what) {}
};

// Zero count still disagrees with the counting main term after maximum subdivision.
struct MissingZeroError : NumericalError {
    explicit MissingZeroError(const std::string& what) : NumericalError(what) {}
};

}  // namespace apl
