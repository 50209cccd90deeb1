#include "kerrssh/bogoliubov.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include "kerrssh/errors.hpp"

namespace kerrssh {

using cxd = std::complex<double>;

const SiteSqueeze* SqueezeSet::at_site(int a_index) const {
  for (const auto& s : sites)
    if (s.site == a_index) return &s;
  return nullptr;
}

double SqueezeSet::mean_r() const {
  if (sites.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& s : sites) sum += s.r;
  return sum / static_cast<double>(sites.size());
}

SqueezeSet squeeze_params(const ChainConfig& config, const Detunings& det,
                          const SteadyState& ss) {
  require_valid(config);
  if (ss.amplitudes.size() != config.n_modes())
    throw ConfigError("squeeze_params: steady state has wrong length");

  const ModeIndex idx(config.n_b);
  SqueezeSet set;
  for (int site : config.driven_sites()) {
    const cxd a = ss.amplitudes(idx.flat_a(site));
    SiteSqueeze s;
    s.site = site;
    s.u_tilde = config.kerr_u * a * a;
    s.delta_tilde_a = det.a(site) + 4.0 * config.kerr_u * std::norm(a);

    const double u_abs = std::abs(s.u_tilde);
    if (!(s.delta_tilde_a > 2.0 * u_abs)) {
      std::ostringstream msg;
      msg << "squeeze_params: site a_" << site
          << " at or beyond the instability boundary (delta_tilde_a = "
          << s.delta_tilde_a << " <= 2|U_tilde| = " << 2.0 * u_abs << ")";
      throw InstabilityBoundaryError(msg.str());
    }

    // theta = arctan(Im/Re), folded to (-pi/2, pi/2]: the squeezing axis is
    // defined modulo pi, so a real (even negative) U_tilde means theta = 0.
    s.theta = u_abs > 0.0
                  ? (s.u_tilde.real() != 0.0
                         ? std::atan(s.u_tilde.imag() / s.u_tilde.real())
                         : std::numbers::pi / 2.0)
                  : 0.0;
    if (std::abs(s.theta) < kThetaTol)
      s.theta = 0.0;
    else
      s.theta_warning = true;
    s.r = 0.25 * std::log((s.delta_tilde_a + 2.0 * u_abs) /
                          (s.delta_tilde_a - 2.0 * u_abs));
    s.xi = std::sqrt(s.delta_tilde_a * s.delta_tilde_a - 4.0 * u_abs * u_abs);
    set.sites.push_back(s);
  }
  return set;
}

SiteSqueeze squeeze_from_r(int site, double r, double xi) {
  if (!(xi > 0.0)) throw ConfigError("squeeze_from_r: xi must be > 0");
  SiteSqueeze s;
  s.site = site;
  s.r = r;
  s.xi = xi;
  s.delta_tilde_a = xi * std::cosh(2.0 * r);
  s.u_tilde = 0.5 * xi * std::sinh(2.0 * r);
  s.theta = 0.0;
  return s;
}

namespace {

double bond_coeff(const SiteSqueeze* s, double g, ReductionMode mode) {
  if (s == nullptr) return g;
  return mode == ReductionMode::rwa ? g * std::exp(s->r) / 2.0
                                    : g * std::cosh(s->r);
}

void check_rwa_validity(const ChainConfig& config, const Detunings& det,
                        const SqueezeSet& sq, const ReducedOptions& opts) {
  std::ostringstream bad;
  for (const auto& s : sq.sites) {
    if (std::exp(-2.0 * s.r) >= opts.rwa_tol)
      bad << " a_" << s.site << " (e^{-2r} = " << std::exp(-2.0 * s.r) << ")";
    // Counter-rotating terms oscillate at delta_b + xi; they are negligible
    // only when that sum dwarfs the bond strength.
    const double bond = config.g * std::exp(s.r) / 2.0;
    for (int b : {s.site, s.site + 1}) {
      const double gap = std::abs(det.b(b) + s.xi);
      if (gap < opts.dispersive_min * bond)
        bad << " bond b_" << b << "-a_" << s.site << " (|delta_b + xi| = "
            << gap << " vs bond " << bond << ")";
    }
  }
  const std::string sites = bad.str();
  if (!sites.empty())
    throw RwaRefusalError(
        "reduced_hamiltonian: rwa outside its validity window at:" + sites);
}

}  // namespace

Eigen::MatrixXd reduced_hamiltonian(const ChainConfig& config,
                                    const Detunings& det, const SqueezeSet& sq,
                                    const ReducedOptions& opts) {
  require_valid(config);
  if (opts.mode == ReductionMode::rwa && !opts.force)
    check_rwa_validity(config, det, sq, opts);

  const int n = config.n_b;
  const ModeIndex idx(n);
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(idx.size(), idx.size());

  for (int i = 1; i <= n; ++i) h(idx.flat_b(i), idx.flat_b(i)) = det.b(i);
  for (int i = 0; i <= n; ++i) {
    const SiteSqueeze* s = sq.at_site(i);
    h(idx.flat_a(i), idx.flat_a(i)) = s != nullptr ? s->xi : det.a(i);
  }
  for (int i = 1; i <= n; ++i) {
    const int fb = idx.flat_b(i);
    for (int a : {i - 1, i}) {
      const int fa = idx.flat_a(a);
      const double v = bond_coeff(sq.at_site(a), config.g, opts.mode);
      h(fb, fa) = v;
      h(fa, fb) = v;
    }
  }
  return h;
}

QuadraticForm bogoliubov_form(const ChainConfig& config, const Detunings& det,
                              const SqueezeSet& sq) {
  require_valid(config);
  const int n = config.n_b;
  const ModeIndex idx(n);
  const int m = idx.size();

  QuadraticForm form;
  form.particle = Eigen::MatrixXcd::Zero(m, m);
  form.anomalous = Eigen::MatrixXcd::Zero(m, m);
  form.loss = Eigen::VectorXd::Zero(m);
  form.with_losses = false;

  for (int i = 1; i <= n; ++i)
    form.particle(idx.flat_b(i), idx.flat_b(i)) = det.b(i);
  for (int i = 0; i <= n; ++i) {
    const SiteSqueeze* s = sq.at_site(i);
    form.particle(idx.flat_a(i), idx.flat_a(i)) =
        s != nullptr ? s->xi : det.a(i);
  }
  for (int i = 1; i <= n; ++i) {
    const int fb = idx.flat_b(i);
    for (int a : {i - 1, i}) {
      const int fa = idx.flat_a(a);
      const SiteSqueeze* s = sq.at_site(a);
      if (s == nullptr) {
        form.particle(fb, fa) = config.g;
        form.particle(fa, fb) = config.g;
      } else {
        // delta a = cosh(r) beta - sinh(r) beta^dag (theta ~ 0): the bond
        // splits into a co-rotating cosh part and an anomalous sinh part.
        const double co = config.g * std::cosh(s->r);
        const double counter = -config.g * std::sinh(s->r);
        form.particle(fb, fa) = co;
        form.particle(fa, fb) = co;
        form.anomalous(fb, fa) = counter;
        form.anomalous(fa, fb) = counter;
      }
    }
  }
  return form;
}

}  // namespace kerrssh
