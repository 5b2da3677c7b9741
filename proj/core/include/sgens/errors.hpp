#pragma once

#include <stdexcept>
#include <string>

namespace sgens {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Invalid model, grid, or run configuration.
class ConfigError : public Error {
public:
  using Error::Error;
};

/// Inputs that violate an operation's preconditions (mismatched grids,
/// unnormalized states, missing retained data).
class UsageError : public Error {
public:
  using Error::Error;
};

/// Argument outside the mathematical domain of a closed form.
class DomainError : public Error {
public:
  using Error::Error;
};

/// Iterative solver failed to converge; carries the best residual reached.
class SolverError : public Error {
public:
  SolverError(const std::string& what, double best_residual)
      : Error(what), best_residual_(best_residual) {}
  double best_residual() const noexcept { return best_residual_; }

private:
  double best_residual_;
};

class UnreachableTargetError : public SolverError {
public:
  using SolverError::SolverError;
};

/// The tabulated q-range does not contain the thermal weight at this beta.
class CoverageError : public Error {
public:
  CoverageError(const std::string& what, double beta) : Error(what), beta_(beta) {}
  double beta() const noexcept { return beta_; }

private:
  double beta_;
};

/// Canonical sum truncated while the neglected Boltzmann weight is still large.
class TruncationError : public Error {
public:
  using Error::Error;
};

}  // namespace sgens
