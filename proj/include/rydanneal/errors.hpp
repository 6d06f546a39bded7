#pragma once

#include <stdexcept>
#include <string>

namespace ryd {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed problem instance (size mismatch, empty input, inconsistent data).
struct InstanceError : Error {
    using Error::Error;
};

// Out-of-range or non-physical parameter value.
struct ParameterError : Error {
    using Error::Error;
};

// Problem exceeds a hard size bound (enumeration or dense-operator limits).
struct CapacityError : Error {
    using Error::Error;
};

// Function evaluated outside its time/argument domain.
struct DomainError : Error {
    using Error::Error;
};

// Embedding failed validation against the exact solver.
struct EmbeddingError : Error {
    using Error::Error;
};

// Calibration plant misbehaved (sign fault, divergence).
struct CalibrationError : Error {
    using Error::Error;
};

// Numerical integrity check failed (norm drift, non-finite values).
struct DiagnosticError : Error {
    using Error::Error;
};

}  // namespace ryd
