#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace diracsol {

/// Invalid physical input (superluminal speed, omega outside (0, m), ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical procedure that did not reach its contract. `kind` is a short
/// machine-readable tag ("no solution in bracket", "tolerance failure",
/// "tail underflow", "scf divergence", "quadrature non-convergence", ...).
class SolverError : public std::runtime_error {
 public:
  SolverError(std::string kind, const std::string& detail, std::vector<double> trace = {})
      : std::runtime_error(kind + ": " + detail), kind_(std::move(kind)), trace_(std::move(trace)) {}

  const std::string& kind() const { return kind_; }
  /// Numbers that explain the failure: swept interval, residual history,
  /// last refinement values.
  const std::vector<double>& trace() const { return trace_; }

 private:
  std::string kind_;
  std::vector<double> trace_;
};

/// Malformed profile/config file or incompatible kinds.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace diracsol
