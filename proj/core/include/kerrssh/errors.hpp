#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace kerrssh {

/// Invalid configuration or malformed input. Maps to CLI exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Any failure of the numerics at run time. Maps to CLI exit code 1.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A solver ran out of iterations or time. Carries the best iterate so
/// callers can warm-start a retry.
struct ConvergenceError : NumericalError {
  ConvergenceError(const std::string& msg, Eigen::VectorXcd best_iterate,
                   double residual)
      : NumericalError(msg),
        best(std::move(best_iterate)),
        residual(residual) {}
  Eigen::VectorXcd best;
  double residual;
};

struct SingularJacobianError : NumericalError {
  using NumericalError::NumericalError;
};

/// A denominator in the cubic reduction chain vanished; the message names
/// the culprit.
struct PoleError : NumericalError {
  using NumericalError::NumericalError;
};

/// The driven-site detuning crossed the squeezing instability boundary
/// (delta_tilde <= 2|U_tilde|).
struct InstabilityBoundaryError : NumericalError {
  using NumericalError::NumericalError;
};

/// Winding number undefined (gap closure) or unresolved (grid too coarse).
struct TopologyError : NumericalError {
  using NumericalError::NumericalError;
};

/// The rotating-wave reduction was requested outside its validity window.
struct RwaRefusalError : NumericalError {
  using NumericalError::NumericalError;
};

/// An operation that requires a stable steady state was handed an
/// unstable one.
struct UnstableStateError : NumericalError {
  using NumericalError::NumericalError;
};

}  // namespace kerrssh
