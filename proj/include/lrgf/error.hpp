#pragma once

#include <stdexcept>
#include <string>

namespace lrgf {

// Base for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// A model/parameter combination outside the admissible region.
class AdmissibilityError : public Error {
public:
    using Error::Error;
};

// A precondition of an operation was violated by the caller.
class ContractError : public Error {
public:
    using Error::Error;
};

// Filter evaluated exactly on a point where it is infinite.
class SingularPointError : public Error {
public:
    using Error::Error;
};

// Adaptive quadrature ran out of panel budget before reaching tolerance.
class QuadratureBudgetError : public Error {
public:
    QuadratureBudgetError(const std::string& msg, double last_error_estimate)
        : Error(msg), last_error(last_error_estimate) {}
    double last_error;
};

// Refinement toward a singular set failed to stabilize: the integral diverges.
class DivergenceError : public Error {
public:
    using Error::Error;
};

// Problem size exceeds a hard memory/compute budget.
class ResourceError : public Error {
public:
    using Error::Error;
};

// Malformed configuration or serialized input.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Hermitian symmetry of a synthesized field was violated (internal bug trap).
class SymmetryError : public Error {
public:
    using Error::Error;
};

}  // namespace lrgf
