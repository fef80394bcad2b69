#pragma once

#include <stdexcept>
#include <string>

namespace archvar {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the mathematical domain of an operation
/// (θ out of family range, t outside (0,1], α outside (0,1), ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// φ(0) = +∞ for every supported family; requesting it raises this instead
/// of returning an overflowed value.
class InfiniteGeneratorError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Structural problems with arguments: wrong dimensions, empty inputs.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public ArgumentError {
 public:
  using ArgumentError::ArgumentError;
};

/// A run configuration file or flag is malformed or inconsistent. The
/// message names the offending section and key.
class ConfigError : public ArgumentError {
 public:
  using ArgumentError::ArgumentError;
};

/// A requested Kendall tau is not attainable by the family.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Quadrature or root finding failed to converge. Carries the best estimate
/// available at the time of failure.
class NumericalError : public Error {
 public:
  NumericalError(const std::string& what, double partial_estimate,
                 double error_estimate)
      : Error(what),
        partial_estimate_(partial_estimate),
        error_estimate_(error_estimate) {}

  double partial_estimate() const noexcept { return partial_estimate_; }
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double partial_estimate_;
  double error_estimate_;
};

/// No sample row fell within h of the α level set.
class EmptyLevelSetError : public Error {
 public:
  using Error::Error;
};

/// Every replication of a Monte Carlo study failed.
class StudyError : public Error {
 public:
  using Error::Error;
};

/// Degenerate input to a statistical diagnostic (e.g. constant column).
class DiagnosticError : public Error {
 public:
  using Error::Error;
};

}  // namespace archvar
