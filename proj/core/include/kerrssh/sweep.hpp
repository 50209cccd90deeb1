#pragma once

#include <vector>

#include "kerrssh/chain_config.hpp"
#include "kerrssh/steady_state.hpp"

namespace kerrssh {

/// What the sweep grid controls. `rabi` sets the Rabi amplitude E directly;
/// `power` interprets the grid as a power P and sets E = sqrt(P) (in
/// dimensionless units the drive enters the response only through E^2).
enum class SweepControl { rabi, power };

enum class SweepDirection { forward, backward, both };

struct SweepPoint {
  double control = 0.0;  ///< grid value as given (power or rabi)
  double rabi = 0.0;
  double x = 0.0;  ///< |a|^2 at the first driven site
  bool stable = false;
  bool jump = false;  ///< set on the arrival point of a detected jump
  std::vector<double> r;  ///< squeezing parameter per driven site (NaN if
                          ///< past the instability boundary)
  SteadyState state;
};

struct SweepBranch {
  SweepDirection direction = SweepDirection::forward;
  std::vector<SweepPoint> points;  ///< in traversal order
  std::vector<int> jumps;          ///< indices into points
};

struct SweepResult {
  std::vector<SweepBranch> branches;  ///< 1, or 2 when direction = both
};

struct SweepOptions {
  /// |delta x| between adjacent points above jump_factor x the median
  /// adjacent change flags a jump.
  double jump_factor = 5.0;
  NewtonOptions newton;
  EvolveOptions evolve;
};

/// Warm-started continuation of the steady state along a drive grid. Each
/// point is seeded with the previous solution and Newton-polished; when the
/// polish fails or lands on an unstable state, time evolution from the seed
/// picks the attractor instead. Solver failures are rethrown with the grid
/// index attached.
SweepResult hysteresis_sweep(const ChainConfig& config, const Detunings& det,
                             SweepControl control, double from, double to,
                             int steps, SweepDirection direction,
                             const SweepOptions& opts = {});

}  // namespace kerrssh
