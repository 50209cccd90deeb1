#include "kerrssh/ssh.hpp"

#include <cmath>
#include <sstream>

#include "kerrssh/errors.hpp"

namespace kerrssh {

SSHModel ssh_from_couplings(double v, double w, double delta_r, int n_cells) {
  if (n_cells <= 0) throw ConfigError("ssh_from_couplings: n_cells must be > 0");
  SSHModel m;
  m.v = v;
  m.w = w;
  m.delta_r = delta_r;
  m.n_cells = n_cells;
  return m;
}

double edge_detuning_rule(double big_delta, double small_delta, double r) {
  return big_delta + 4.0 * (small_delta - big_delta) / std::exp(2.0 * r);
}

SSHModel effective_ssh(const ChainConfig& config, const Detunings& det,
                       const SqueezeSet& sq, const EffectiveOptions& opts) {
  require_valid(config);
  if (sq.sites.empty())
    throw ConfigError("effective_ssh: no squeezed sites");
  if (config.n_b % 2 != 0)
    throw ConfigError("effective_ssh: N must be even");

  const int n = config.n_b;
  const double g = config.g;
  std::ostringstream bad;

  const double big_delta = det.b(1);
  for (int i = 2; i <= n; ++i)
    if (std::abs(det.b(i) - big_delta) > opts.uniformity_tol * g)
      bad << " delta_b_" << i << " = " << det.b(i) << " vs " << big_delta << ";";

  const double r = sq.mean_r();
  const double xi = sq.sites.front().xi;
  for (const auto& s : sq.sites) {
    if (std::abs(s.r - r) > opts.r_tol)
      bad << " r at a_" << s.site << " = " << s.r << " vs mean " << r << ";";
    if (std::abs(s.xi - xi) > opts.uniformity_tol * g)
      bad << " xi at a_" << s.site << " = " << s.xi << " vs " << xi << ";";
  }

  // Interior undriven a-modes (odd sites) must sit at the same frequency as
  // the squeezed ones, so every eliminated bond sees the same Delta - delta.
  for (int i = 1; i < n; ++i) {
    if (config.is_driven_site(i)) continue;
    if (std::abs(det.a(i) - xi) > opts.uniformity_tol * g)
      bad << " delta_a_" << i << " = " << det.a(i) << " vs xi = " << xi << ";";
  }

  if (opts.check_edges) {
    const double want = edge_detuning_rule(big_delta, xi, r);
    for (int i : {0, n})
      if (std::abs(det.a(i) - want) > opts.uniformity_tol * g)
        bad << " edge delta_a_" << i << " = " << det.a(i) << " vs rule "
            << want << ";";
  }

  const std::string msg = bad.str();
  if (!msg.empty())
    throw ConfigError("effective_ssh: inputs not uniform:" + msg);

  const double d = big_delta - xi;
  if (d == 0.0)
    throw ConfigError("effective_ssh: Delta - delta vanishes");

  SSHModel m;
  m.n_cells = n / 2;
  m.r = r;
  m.big_delta = big_delta;
  m.small_delta = xi;
  m.lambda_bar = g / d;
  m.v = g * g / d;
  m.w = g * g * std::exp(2.0 * r) / (4.0 * d);
  m.delta_r = g * g * (4.0 + std::exp(2.0 * r)) / (4.0 * d);
  m.dispersive_warning = std::abs(m.lambda_bar) >= opts.dispersive_threshold;
  return m;
}

Eigen::MatrixXd finite_ssh_matrix(const SSHModel& m, bool rotating_frame) {
  const int n = 2 * m.n_cells;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  if (!rotating_frame) h.diagonal().setConstant(m.delta_r);
  for (int i = 0; i + 1 < n; ++i) {
    const double bond = i % 2 == 0 ? m.v : m.w;
    h(i, i + 1) = bond;
    h(i + 1, i) = bond;
  }
  return h;
}

}  // namespace kerrssh
