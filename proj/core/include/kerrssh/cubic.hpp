#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "kerrssh/chain_config.hpp"

namespace kerrssh {

/// Single-mode reduction of the symmetric N=6 chain. Eliminating the linear
/// half-chains left and right of a driven cavity collapses the steady-state
/// equations to one cubic in x = |a_2^s|^2:
///
///   4U^2 x^3 - 4U Re(delta_tilde) x^2 + |delta_tilde|^2 x = E^2
///
/// All intermediate detunings are lossy (complex), so the cubic is exact
/// against the full 13-mode solve. delta_tilde is stored in the convention
/// that makes the coefficient pattern above hold, i.e.
/// delta_tilde = -conj[(delta_a_2 - i kappa_2) + g (chi1 + chi2)].
struct CubicReduction {
  std::complex<double> delta_tilde;
  std::complex<double> chi1;          ///< b_2 = chi1 a_2
  std::complex<double> chi2;          ///< b_3 = chi2 a_2
  std::complex<double> eff_delta_a1;  ///< delta_a_1 - g^2/eff_delta_b1
  std::complex<double> eff_delta_b1;  ///< delta_b_1 - g^2/delta_a_0
  double c3 = 0.0;                    ///< 4U^2
  double c2 = 0.0;                    ///< -4U Re(delta_tilde)
  double c1 = 0.0;                    ///< |delta_tilde|^2
  double kerr_u = 0.0;

  /// Effective single-cavity response coefficient:
  /// (response + 2Ux) a_2 = -iE with response = -conj(delta_tilde).
  std::complex<double> response() const { return -std::conj(delta_tilde); }
};

/// Builds the reduction chain. Requires N = 6 and parameters mirror-symmetric
/// about a_3; throws PoleError naming any vanishing denominator.
CubicReduction build_cubic_reduction(const ChainConfig& config,
                                     const Detunings& det);

enum class BranchStability { candidate_stable, unstable };

struct CubicRoot {
  double x = 0.0;
  BranchStability tag = BranchStability::candidate_stable;
};

/// All non-negative real roots of the cubic at Rabi amplitude `rabi`,
/// ascending. The middle root of three is the negative-slope branch and is
/// tagged unstable.
std::vector<CubicRoot> solve_cubic(const CubicReduction& red, double rabi);

/// Rabi amplitude that places the response at x: E = sqrt(p(x)) with p the
/// cubic's left-hand side. Inverse of the response curve, branch-agnostic.
double required_drive(const CubicReduction& red, double x);

/// Full-chain amplitude seed reconstructed from a cubic root x, using the
/// same elimination chain. Feeding it to newton_refine converges onto the
/// corresponding branch.
Eigen::VectorXcd symmetric_seed(const ChainConfig& config, const Detunings& det,
                                double x, double rabi);

}  // namespace kerrssh
