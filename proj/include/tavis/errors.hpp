// errors.hpp — exception types shared by the propagators, observables and scenario IO

#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace tavis {

namespace detail {

// Compact magnitude for diagnostics.
inline std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

}  // namespace detail

// Base for numerical failures. The CLI maps these to exit status 2.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Closed-form coefficients are singular (|X|, |Y1 - Y2| or a partial-fraction
// denominator below tolerance). Callers should use the spectral propagator.
struct DegenerateParameters : NumericalError {
    using NumericalError::NumericalError;
};

// Closed-form matrix fails A(0) = I for the principal root branches.
struct BranchInconsistency : NumericalError {
    using NumericalError::NumericalError;
};

// Runge-Kutta norm drift exceeded its budget; reduce dt_max.
struct StepTooLarge : NumericalError {
    using NumericalError::NumericalError;
};

struct NotADensityMatrix : NumericalError {
    using NumericalError::NumericalError;
};

// Bad arguments to library calls (p outside [0, 1], negative M, ...).
struct InvalidInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Configuration errors. The CLI maps these to exit status 1.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : ConfigError {
    using ConfigError::ConfigError;
};

struct ValidationError : ConfigError {
    using ConfigError::ConfigError;
};

}  // namespace tavis
