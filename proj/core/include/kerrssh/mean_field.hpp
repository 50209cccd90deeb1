#pragma once

#include <complex>

#include <Eigen/Dense>

#include "kerrssh/chain_config.hpp"

namespace kerrssh {

/// Right-hand side of the classical mean-value equations in the drive frame,
/// evaluated at `state` (flat ModeIndex ordering, length 2N+1):
///   db_i/dt = -i(delta_b_i - i gamma_i) b_i - i g (a_{i-1} + a_i)
///   da_i/dt = -i(delta_a_i - i kappa_i) a_i - i g (b_i + b_{i+1})
///             - 2iU a_i* a_i a_i + E        [driven sites only]
/// Boundary a_0 couples only to b_1, a_N only to b_N.
Eigen::VectorXcd mean_field_rhs(const ChainConfig& config,
                                const Detunings& det,
                                const Eigen::VectorXcd& state);

/// Doubled (particle-hole) matrix of the bilinear fluctuation Hamiltonian,
/// stored as equation-of-motion blocks: dY/dt = -i (particle Y + anomalous Y*)
/// up to losses. `particle` carries delta_b, delta_tilde_a = delta_a + 4U|a|^2
/// and the g bonds; `anomalous` carries 2 U (a_s)^2 on the driven diagonal
/// (the factor 2 is the equation-of-motion coefficient of the pump term
/// U_tilde da^dag^2 + h.c.).
struct QuadraticForm {
  Eigen::MatrixXcd particle;   ///< M x M, Hermitian
  Eigen::MatrixXcd anomalous;  ///< M x M, symmetric (diagonal here)
  Eigen::VectorXd loss;        ///< M decay rates; zero when lossless
  bool with_losses = false;

  int size() const { return static_cast<int>(particle.rows()); }

  /// 2M x 2M matrix H_Q^M generating dU/dt = -i H_Q^M U in the [Y, Y*] basis:
  ///   [[A - i Gamma,  B], [-B*, -A* - i Gamma]]
  Eigen::MatrixXcd dynamical_matrix() const;

  /// Lossless Bogoliubov-de Gennes block form [[A, B], [B*, A*]].
  Eigen::MatrixXcd bdg_matrix() const;
};

/// Fluctuation form linearized around an arbitrary amplitude vector. This is
/// also the (doubled) Jacobian structure of mean_field_rhs, which Newton
/// refinement reuses.
QuadraticForm fluctuation_form(const ChainConfig& config, const Detunings& det,
                               const Eigen::VectorXcd& state, bool with_losses);

}  // namespace kerrssh
