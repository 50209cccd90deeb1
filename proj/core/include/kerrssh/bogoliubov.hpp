#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "kerrssh/chain_config.hpp"
#include "kerrssh/mean_field.hpp"
#include "kerrssh/steady_state.hpp"

namespace kerrssh {

/// Squeezing bookkeeping for one driven site 2i. The Bogoliubov rotation that
/// absorbs the anomalous term U_tilde = U (a^s)^2 is parameterized by
///   r = 1/4 ln[(delta_tilde_a + 2|U_tilde|) / (delta_tilde_a - 2|U_tilde|)]
/// and turns the pair (delta_tilde_a, U_tilde) into a free quasiparticle of
/// frequency xi = sqrt(delta_tilde_a^2 - 4|U_tilde|^2).
struct SiteSqueeze {
  int site = 0;  ///< a-site index (2, 4, ...)
  std::complex<double> u_tilde;
  double theta = 0.0;          ///< arg(u_tilde); zeroed when |theta| < 1e-2
  double delta_tilde_a = 0.0;  ///< delta_a + 4U|a^s|^2
  double r = 0.0;
  double xi = 0.0;
  bool theta_warning = false;  ///< set when |theta| exceeded theta_tol
};

struct SqueezeSet {
  std::vector<SiteSqueeze> sites;  ///< one entry per driven site, ascending

  const SiteSqueeze* at_site(int a_index) const;
  /// Mean r over driven sites (0 if none).
  double mean_r() const;
};

inline constexpr double kThetaTol = 1e-2;

/// Squeezing parameters at every driven site of a converged steady state.
/// Throws InstabilityBoundaryError when delta_tilde_a <= 2|U_tilde| anywhere.
SqueezeSet squeeze_params(const ChainConfig& config, const Detunings& det,
                          const SteadyState& ss);

/// Synthetic inverse: the (delta_tilde_a, |U_tilde|) pair that realizes a
/// requested (r, xi), via delta_tilde_a = xi cosh 2r, 2|U_tilde| = xi sinh 2r.
/// Used to engineer operating points without solving the nonlinear chain.
SiteSqueeze squeeze_from_r(int site, double r, double xi);

/// Bond coefficient between a b-mode and a squeezed (Bogoliubov) site:
/// `rwa` keeps only the co-rotating g e^r / 2; `exact` keeps the full
/// particle-conserving g cosh r (the g sinh r partner lives in the anomalous
/// block of bogoliubov_form).
enum class ReductionMode { rwa, exact };

struct ReducedOptions {
  ReductionMode mode = ReductionMode::rwa;
  bool force = false;         ///< bypass the rwa validity refusal
  double rwa_tol = 0.25;      ///< refuse rwa when e^{-2r} >= rwa_tol
  double dispersive_min = 3.0;  ///< refuse rwa when |detuning gap| / bond < this
};

/// Particle-conserving single-particle matrix of size 2N+1 after the
/// Bogoliubov rotation at the driven sites: diagonal delta_b on b-modes,
/// delta_a on undriven a-modes, xi on squeezed sites; bonds g to undriven
/// a-modes and g e^r/2 (rwa) or g cosh r (exact) to squeezed sites.
/// Throws RwaRefusalError listing offending sites unless opts.force.
Eigen::MatrixXd reduced_hamiltonian(const ChainConfig& config,
                                    const Detunings& det, const SqueezeSet& sq,
                                    const ReducedOptions& opts = {});

/// Full lossless quadratic form in the Bogoliubov frame: cosh-r bonds in the
/// particle block, -sinh-r bonds in the anomalous block, xi on squeezed
/// diagonals. Exact counterpart of the rwa reduced_hamiltonian.
QuadraticForm bogoliubov_form(const ChainConfig& config, const Detunings& det,
                              const SqueezeSet& sq);

}  // namespace kerrssh
