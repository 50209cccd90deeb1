#include "kerrssh/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "kerrssh/bogoliubov.hpp"
#include "kerrssh/errors.hpp"

namespace kerrssh {

namespace {

double rabi_of(SweepControl control, double value) {
  if (control == SweepControl::rabi) return value;
  if (value < 0.0)
    throw ConfigError("hysteresis_sweep: power must be >= 0");
  return std::sqrt(value);
}

SweepPoint solve_point(const ChainConfig& config, const Detunings& det,
                       const Eigen::VectorXcd& seed, const SweepOptions& opts) {
  SteadyState ss;
  bool solved = false;
  try {
    ss = newton_refine(config, det, seed, opts.newton);
    solved = ss.stable;
  } catch (const NumericalError&) {
    solved = false;
  }
  if (!solved) {
    // Newton failed or converged onto an unstable branch: let the physical
    // dynamics pick the attractor reachable from the seed.
    ss = evolve_to_steady(config, det, seed, opts.evolve);
    ss = newton_refine(config, det, ss.amplitudes, opts.newton);
  }

  SweepPoint point;
  point.x = ss.x;
  point.stable = ss.stable;
  try {
    const SqueezeSet sq = squeeze_params(config, det, ss);
    for (const auto& s : sq.sites) point.r.push_back(s.r);
  } catch (const InstabilityBoundaryError&) {
    for (size_t i = 0; i < config.driven_sites().size(); ++i)
      point.r.push_back(std::numeric_limits<double>::quiet_NaN());
  }
  point.state = std::move(ss);
  return point;
}

void mark_jumps(SweepBranch& branch, double jump_factor) {
  const int n = static_cast<int>(branch.points.size());
  if (n < 3) return;
  std::vector<double> changes(n - 1);
  double x_max = 0.0;
  for (int i = 0; i + 1 < n; ++i) {
    changes[i] = std::abs(branch.points[i + 1].x - branch.points[i].x);
    x_max = std::max({x_max, std::abs(branch.points[i].x),
                      std::abs(branch.points[i + 1].x)});
  }
  // Compare each step against the local trend (median of nearby steps,
  // excluding itself) so that smooth steepening near a fold is not flagged.
  const double floor = 1e-12 * std::max(x_max, 1.0);
  const int nc = n - 1;
  for (int i = 0; i + 1 < n; ++i) {
    std::vector<double> window;
    for (int j = std::max(0, i - 3); j < std::min(nc, i + 4); ++j)
      if (j != i) window.push_back(changes[j]);
    std::nth_element(window.begin(), window.begin() + window.size() / 2,
                     window.end());
    const double local = window[window.size() / 2];
    const double threshold = jump_factor * std::max(local, floor);
    if (changes[i] > threshold) {
      branch.points[i + 1].jump = true;
      branch.jumps.push_back(i + 1);
    }
  }
}

SweepBranch run_branch(ChainConfig config, const Detunings& det,
                       SweepControl control, double from, double to, int steps,
                       SweepDirection direction, const SweepOptions& opts) {
  SweepBranch branch;
  branch.direction = direction;

  Eigen::VectorXcd seed = Eigen::VectorXcd::Zero(config.n_modes());
  for (int j = 0; j < steps; ++j) {
    const double frac = static_cast<double>(j) / (steps - 1);
    const double value = direction == SweepDirection::forward
                             ? from + (to - from) * frac
                             : to - (to - from) * frac;
    const double rabi = rabi_of(control, value);
    config.drive_amp.setConstant(rabi);
    try {
      SweepPoint point = solve_point(config, det, seed, opts);
      point.control = value;
      point.rabi = rabi;
      seed = point.state.amplitudes;
      branch.points.push_back(std::move(point));
    } catch (const NumericalError& err) {
      std::ostringstream msg;
      msg << "hysteresis_sweep: grid index " << j << " (control " << value
          << "): " << err.what();
      throw NumericalError(msg.str());
    }
  }
  mark_jumps(branch, opts.jump_factor);
  return branch;
}

}  // namespace

SweepResult hysteresis_sweep(const ChainConfig& config, const Detunings& det,
                             SweepControl control, double from, double to,
                             int steps, SweepDirection direction,
                             const SweepOptions& opts) {
  require_valid(config);
  if (steps < 2) throw ConfigError("hysteresis_sweep: steps must be >= 2");
  if (!(to > from))
    throw ConfigError("hysteresis_sweep: need to > from");

  SweepResult result;
  if (direction != SweepDirection::backward)
    result.branches.push_back(run_branch(config, det, control, from, to, steps,
                                         SweepDirection::forward, opts));
  if (direction != SweepDirection::forward)
    result.branches.push_back(run_branch(config, det, control, from, to, steps,
                                         SweepDirection::backward, opts));
  return result;
}

}  // namespace kerrssh
