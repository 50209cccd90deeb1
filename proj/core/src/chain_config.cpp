#include "kerrssh/chain_config.hpp"

#include <cmath>
#include <sstream>

#include "kerrssh/errors.hpp"

namespace kerrssh {

std::vector<int> ChainConfig::driven_sites() const {
  std::vector<int> sites;
  for (int j = 1; j <= n_b / 2 - 1; ++j) sites.push_back(2 * j);
  return sites;
}

bool ChainConfig::is_driven_site(int a_index) const {
  return a_index >= 2 && a_index <= n_b - 2 && a_index % 2 == 0;
}

double ChainConfig::drive_at(int a_index) const {
  if (!is_driven_site(a_index)) return 0.0;
  return drive_amp(a_index / 2 - 1);
}

ChainConfig make_uniform_chain(int n_b, double omega_b_val, double omega_a_val,
                               double kerr_u, double g, double gamma_val,
                               double kappa_val) {
  ChainConfig c;
  c.n_b = n_b;
  c.omega_b = Eigen::VectorXd::Constant(n_b, omega_b_val);
  c.omega_a = Eigen::VectorXd::Constant(n_b + 1, omega_a_val);
  c.kerr_u = kerr_u;
  c.g = g;
  c.gamma = Eigen::VectorXd::Constant(n_b, gamma_val);
  c.kappa = Eigen::VectorXd::Constant(n_b + 1, kappa_val);
  c.drive_amp = Eigen::VectorXd::Zero(std::max(n_b / 2 - 1, 0));
  return c;
}

ValidationReport validate(const ChainConfig& config) {
  ValidationReport report;
  auto fail = [&](const std::string& msg) {
    report.ok = false;
    report.violations.push_back(msg);
  };

  const int n = config.n_b;
  if (n < 2) fail("n_b must be >= 2");
  if (n % 2 != 0) fail("n_b must be even");
  if (config.omega_b.size() != n)
    fail("omega_b must have length n_b");
  if (config.omega_a.size() != n + 1)
    fail("omega_a must have length n_b + 1");
  if (config.gamma.size() != n) fail("gamma must have length n_b");
  if (config.kappa.size() != n + 1) fail("kappa must have length n_b + 1");
  if (n >= 2 && config.drive_amp.size() != n / 2 - 1)
    fail("drive_amp must have length n_b/2 - 1 (one per driven site)");
  if (config.kerr_u > 0.0) fail("kerr_u must satisfy U = -|U|");
  if (!(config.g > 0.0)) fail("g must be > 0");
  if ((config.gamma.array() < 0.0).any()) fail("gamma entries must be >= 0");
  if ((config.kappa.array() < 0.0).any()) fail("kappa entries must be >= 0");
  if ((config.drive_amp.array() < 0.0).any())
    fail("drive_amp entries must be >= 0");
  return report;
}

void require_valid(const ChainConfig& config) {
  ValidationReport report = validate(config);
  if (report.ok) return;
  std::ostringstream msg;
  msg << "invalid chain configuration:";
  for (const auto& v : report.violations) msg << "\n  - " << v;
  throw ConfigError(msg.str());
}

Detunings detunings_of(const ChainConfig& config) {
  Detunings d;
  d.delta_b = config.omega_b.array() - config.drive_freq;
  d.delta_a = config.omega_a.array() - config.drive_freq;
  return d;
}

double rabi_from_power(const DriveSpec& drive) {
  if (!(drive.drive_freq > 0.0))
    throw ConfigError("rabi_from_power: drive_freq must be > 0");
  if (drive.power < 0.0)
    throw ConfigError("rabi_from_power: power must be >= 0");
  if (drive.kappa < 0.0)
    throw ConfigError("rabi_from_power: kappa must be >= 0");
  return std::sqrt(2.0 * drive.kappa * drive.power /
                   (drive.hbar * drive.drive_freq));
}

}  // namespace kerrssh
