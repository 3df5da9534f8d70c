// Error types shared across the horograph modules.
#pragma once

#include <stdexcept>
#include <string>

namespace horograph {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NonPositiveLength : public Error {
public:
    explicit NonPositiveLength(const std::string& what) : Error("non-positive horizontal length: " + what) {}
};

class NonPositiveBoundaryData : public Error {
public:
    explicit NonPositiveBoundaryData(const std::string& what) : Error("non-positive boundary data: " + what) {}
};

class EmptyDomain : public Error {
public:
    explicit EmptyDomain(const std::string& what) : Error("empty domain: " + what) {}
};

class InvalidDomain : public Error {
public:
    explicit InvalidDomain(const std::string& what) : Error("invalid domain: " + what) {}
};

class OutsideValidity : public Error {
public:
    explicit OutsideValidity(const std::string& what) : Error("outside validity region: " + what) {}
};

class InvalidParams : public Error {
public:
    explicit InvalidParams(const std::string& what) : Error("invalid parameters: " + what) {}
};

class HypothesisViolated : public Error {
public:
    explicit HypothesisViolated(const std::string& what) : Error("hypothesis violated: " + what) {}
};

/// Failures of the nonlinear solver. `context` is filled in by the
/// continuation driver with the failing (s, eps) pair.
class SolverError : public Error {
public:
    using Error::Error;
};

class NewtonDiverged : public SolverError {
public:
    explicit NewtonDiverged(const std::string& what) : SolverError("Newton diverged: " + what) {}
};

class LineSearchStalled : public SolverError {
public:
    explicit LineSearchStalled(const std::string& what) : SolverError("line search stalled: " + what) {}
};

class SingularJacobian : public SolverError {
public:
    explicit SingularJacobian(const std::string& what) : SolverError("singular Jacobian: " + what) {}
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error("config error: " + what) {}
};

}  // namespace horograph
