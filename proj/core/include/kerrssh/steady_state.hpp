#pragma once

#include <complex>

#include <Eigen/Dense>

#include "kerrssh/chain_config.hpp"
#include "kerrssh/mean_field.hpp"

namespace kerrssh {

/// A converged classical steady state of the mean-value equations.
struct SteadyState {
  Eigen::VectorXcd amplitudes;  ///< flat ModeIndex ordering
  double residual = 0.0;        ///< max-norm of mean_field_rhs at the solution
  bool stable = false;
  double x = 0.0;  ///< |a_2|^2 at the first driven site (0 if undriven chain)

  std::complex<double> a(int i) const {
    return amplitudes(2 * i);
  }
  std::complex<double> b(int i) const {
    return amplitudes(2 * i - 1);
  }
};

struct EvolveOptions {
  double t_max = -1.0;  ///< auto: 2000 / min positive decay rate
  double dt = -1.0;     ///< auto: 0.01 / max(|detuning|, g, drive)
  double tol = 1e-8;    ///< steady when max-norm of the derivative < tol
};

/// Integrates the mean-value equations with a fixed-step classical 4th-order
/// scheme until the derivative norm drops below tol. Requires all decay rates
/// strictly positive; throws ConvergenceError (carrying the last state) if
/// t_max is reached first.
SteadyState evolve_to_steady(const ChainConfig& config, const Detunings& det,
                             const Eigen::VectorXcd& initial,
                             const EvolveOptions& opts = {});

struct NewtonOptions {
  double tol = 1e-10;
  int max_iter = 50;
  int max_halvings = 30;
};

/// Damped Newton polish of the steady-state equations, solved on the doubled
/// [dz, dz*] system whose Jacobian is -i times the lossy fluctuation matrix.
SteadyState newton_refine(const ChainConfig& config, const Detunings& det,
                          const Eigen::VectorXcd& guess,
                          const NewtonOptions& opts = {});

struct StabilityResult {
  bool stable = false;
  Eigen::VectorXcd eigenvalues;  ///< of the Jacobian -i H_Q^M (lossy)
};

/// Linear stability: all Jacobian eigenvalue real parts strictly below zero.
/// Marginal (zero) real parts are reported unstable.
StabilityResult stability_check(const ChainConfig& config, const Detunings& det,
                                const SteadyState& ss);

/// Fluctuation Hamiltonian linearized around a converged steady state.
/// Throws if the state's residual is above `residual_tol`.
QuadraticForm build_fluctuation_hamiltonian(const ChainConfig& config,
                                            const Detunings& det,
                                            const SteadyState& ss,
                                            bool with_losses,
                                            double residual_tol = 1e-6);

}  // namespace kerrssh
