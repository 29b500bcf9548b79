#pragma once

#include <stdexcept>
#include <string>

namespace specmix {

// Validation-class failures (bad arguments, mismatched shapes). CLI maps
// these to exit code 1.
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DimensionMismatch : ValidationError {
    using ValidationError::ValidationError;
};

struct BasisMismatch : ValidationError {
    using ValidationError::ValidationError;
};

struct CapacityExceeded : ValidationError {
    using ValidationError::ValidationError;
};

struct InfeasibleInit : ValidationError {
    using ValidationError::ValidationError;
};

// Numerical-class failures (blow-up, failed integration). CLI maps these to
// exit code 2.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnstableIntegration : NumericalError {
    using NumericalError::NumericalError;
};

}  // namespace specmix
