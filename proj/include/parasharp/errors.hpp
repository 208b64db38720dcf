#pragma once

#include <stdexcept>
#include <string>

namespace parasharp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the mathematical domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A configuration object violates its invariants.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A sampled integrand or field produced a non-finite value.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

/// A solver could not produce a result (bracket failure, divergence, ...).
class SolverError : public Error {
 public:
  using Error::Error;
};

/// Step-size control in an ODE integration broke down.
class IntegrationError : public SolverError {
 public:
  using SolverError::SolverError;
};

}  // namespace parasharp
