#pragma once

#include <stdexcept>
#include <string>

namespace mechopt {

/// Invalid input or violated type invariant (bad geometry, bad config values).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Iterative solver failed to reach its tolerance within the iteration budget.
class ConvergenceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Newton step could not be computed because the system matrix is singular.
class SingularStepError : public ConvergenceError {
public:
  using ConvergenceError::ConvergenceError;
};

/// Config file could not be parsed (syntax, missing/unknown/ill-typed fields).
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace mechopt
