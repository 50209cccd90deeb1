#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "kerrssh/chain_config.hpp"
#include "kerrssh/steady_state.hpp"

namespace kerrssh {

/// Weak-probe setup. The probe enters one b-mode (default b_1) and the
/// transmission at probe-pump detuning delta_p is
///   t(delta_p) = 2 gamma_probe * [M^{-1} e_probe](probe)
/// with M = i (H - delta_p I) built from the lossy doubled fluctuation
/// matrix. |t| = 2 at the resonance of a decoupled mode is a property of
/// this convention, not an error.
struct ProbeConfig {
  Eigen::VectorXd delta_p_grid;  ///< strictly increasing
  int probe_b = 1;               ///< probed b-mode index
  double gamma_probe = 0.0;      ///< the gamma in t = 2 gamma (M^{-1})_22
};

struct Peak {
  double delta_p = 0.0;
  double abs_t = 0.0;
};

struct TransmissionSpectrum {
  Eigen::VectorXd delta_p;
  Eigen::VectorXcd t;
  std::vector<Peak> peaks;
};

/// Probe response on the whole grid. Requires a stable steady state (throws
/// UnstableStateError naming the offending eigenvalue) and strictly positive
/// losses everywhere (losses keep M invertible on the real axis).
TransmissionSpectrum transmission(const ChainConfig& config,
                                  const Detunings& det, const SteadyState& ss,
                                  const ProbeConfig& probe);

struct PeakOptions {
  double floor = -1.0;           ///< auto: 3 x median |t| over the grid
  double min_separation = -1.0;  ///< merge radius; must be > 4 grid steps
};

/// Local maxima of |t| above the floor, merged within min_separation (keeping
/// the taller peak).
std::vector<Peak> peak_find(const TransmissionSpectrum& spec,
                            const PeakOptions& opts = {});

}  // namespace kerrssh
