#include "kerrssh/transmission.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>
#include <vector>

#include "kerrssh/errors.hpp"
#include "kerrssh/mean_field.hpp"

namespace kerrssh {

using cxd = std::complex<double>;
constexpr cxd kI{0.0, 1.0};

TransmissionSpectrum transmission(const ChainConfig& config,
                                  const Detunings& det, const SteadyState& ss,
                                  const ProbeConfig& probe) {
  require_valid(config);
  const int n = config.n_b;
  if (probe.probe_b < 1 || probe.probe_b > n)
    throw ConfigError("transmission: probe_b out of range");
  if (probe.delta_p_grid.size() < 2)
    throw ConfigError("transmission: need at least 2 grid points");
  for (int j = 1; j < probe.delta_p_grid.size(); ++j)
    if (!(probe.delta_p_grid(j) > probe.delta_p_grid(j - 1)))
      throw ConfigError("transmission: grid must be strictly increasing");
  if (!(config.gamma.minCoeff() > 0.0 && config.kappa.minCoeff() > 0.0))
    throw ConfigError("transmission: all losses must be > 0");

  const StabilityResult stab = stability_check(config, det, ss);
  if (!stab.stable) {
    Eigen::Index worst;
    stab.eigenvalues.real().maxCoeff(&worst);
    std::ostringstream msg;
    msg << "transmission: steady state unstable (eigenvalue "
        << stab.eigenvalues(worst).real() << " + "
        << stab.eigenvalues(worst).imag() << "i has non-negative real part)";
    throw UnstableStateError(msg.str());
  }

  const QuadraticForm form = fluctuation_form(config, det, ss.amplitudes, true);
  const Eigen::MatrixXcd h = form.dynamical_matrix();
  const int dim = static_cast<int>(h.rows());
  const ModeIndex idx(n);
  const int probe_flat = idx.flat_b(probe.probe_b);

  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(dim);
  rhs(probe_flat) = 1.0;

  TransmissionSpectrum spec;
  spec.delta_p = probe.delta_p_grid;
  spec.t.resize(spec.delta_p.size());
  Eigen::MatrixXcd m(dim, dim);
  for (int j = 0; j < spec.delta_p.size(); ++j) {
    m = kI * h;
    m.diagonal().array() -= kI * spec.delta_p(j);
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(m);
    const Eigen::VectorXcd z = lu.solve(rhs);
    if (!z.allFinite())
      throw NumericalError("transmission: singular response matrix");
    spec.t(j) = 2.0 * probe.gamma_probe * z(probe_flat);
  }
  return spec;
}

std::vector<Peak> peak_find(const TransmissionSpectrum& spec,
                            const PeakOptions& opts) {
  const int n = static_cast<int>(spec.delta_p.size());
  if (n < 3) throw ConfigError("peak_find: grid too short");

  Eigen::VectorXd abs_t = spec.t.cwiseAbs();
  double floor = opts.floor;
  if (floor < 0.0) {
    std::vector<double> sorted(abs_t.data(), abs_t.data() + n);
    std::nth_element(sorted.begin(), sorted.begin() + n / 2, sorted.end());
    floor = 3.0 * sorted[n / 2];
  }
  const double step = (spec.delta_p(n - 1) - spec.delta_p(0)) / (n - 1);
  double min_sep = opts.min_separation;
  if (min_sep >= 0.0 && min_sep < 4.0 * step)
    throw ConfigError("peak_find: grid resolution must be < min_separation/4");

  std::vector<Peak> peaks;
  for (int j = 1; j + 1 < n; ++j) {
    if (abs_t(j) < floor) continue;
    if (abs_t(j) >= abs_t(j - 1) && abs_t(j) > abs_t(j + 1))
      peaks.push_back({spec.delta_p(j), abs_t(j)});
  }
  if (min_sep <= 0.0) return peaks;

  std::vector<Peak> merged;
  for (const Peak& p : peaks) {
    if (!merged.empty() && p.delta_p - merged.back().delta_p < min_sep) {
      if (p.abs_t > merged.back().abs_t) merged.back() = p;
    } else {
      merged.push_back(p);
    }
  }
  return merged;
}

}  // namespace kerrssh
