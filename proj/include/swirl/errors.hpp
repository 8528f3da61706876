#pragma once

#include <stdexcept>
#include <string>

namespace swirl {

/// Probe or parameter outside the valid/sampled domain.
class DomainError : public std::domain_error {
  using std::domain_error::domain_error;
};

/// API contract violation (kind mismatch, negative data, bad argument combination).
class ContractError : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Iterative solver failure; carries the last residual and the step index.
class SolverError : public std::runtime_error {
public:
  SolverError(const std::string& what, double residual, long step = -1)
      : std::runtime_error(what), residual_(residual), step_(step) {}
  double residual() const noexcept { return residual_; }
  long step() const noexcept { return step_; }

private:
  double residual_;
  long step_;
};

/// Time step exceeds the stability bound (diffusion or advection, including
/// the singular radial drift at the first off-axis node).
class StepSizeError : public SolverError {
public:
  using SolverError::SolverError;
};

} // namespace swirl
