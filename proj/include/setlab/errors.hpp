#pragma once

#include <stdexcept>
#include <string>

namespace setlab {

/// Operands live in different spaces, or a vector has the wrong length.
class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A convex program did not reach its termination criterion.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, double residual)
      : std::runtime_error(what + " (residual " + std::to_string(residual) + ")"),
        residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// Exact evaluation would need more generators than the configured ceiling.
class GeneratorCeilingExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Raised when the supplied input does not satisfy a required hypothesis.
class HypothesisNotMet : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace setlab
