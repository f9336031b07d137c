#pragma once

#include <stdexcept>
#include <string>

namespace nlspec {

/// Non-finite or out-of-domain arguments handed to a pure evaluation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Malformed operator files, inconsistent geometry, bad flags.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical procedure did not reach its stopping criterion.
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The ODE integrator could not continue (step size underflow).
class IntegrationError : public SolverError {
public:
    IntegrationError(const std::string& what, double last_reached)
        : SolverError(what), last_reached_(last_reached) {}

    double last_reached() const noexcept { return last_reached_; }

private:
    double last_reached_;
};

/// Hypotheses the operator was assumed to satisfy turned out false.
class StructureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace nlspec
