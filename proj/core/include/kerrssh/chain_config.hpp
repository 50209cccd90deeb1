#pragma once

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace kerrssh {

enum class UnitMode { dimensionless_g, si };

/// Physical parameters of the 2N+1-mode chain a_0, b_1, a_1, ..., b_N, a_N.
///
/// In dimensionless_g mode every rate and frequency is measured in units of
/// the hopping g; the usual convention is drive_freq = 0 with omega_a/omega_b
/// holding the detunings directly. In si mode everything is in rad/s.
struct ChainConfig {
  int n_b = 6;                ///< number of b-modes N (even)
  Eigen::VectorXd omega_b;    ///< size N, frequency of b_1..b_N
  Eigen::VectorXd omega_a;    ///< size N+1, frequency of a_0..a_N
  double kerr_u = 0.0;        ///< Kerr coefficient, U = -|U|
  double g = 1.0;             ///< nearest-neighbor coupling
  Eigen::VectorXd gamma;      ///< size N, decay of b_1..b_N
  Eigen::VectorXd kappa;      ///< size N+1, decay of a_0..a_N
  double drive_freq = 0.0;    ///< pump frequency omega_d
  Eigen::VectorXd drive_amp;  ///< size N/2-1, Rabi amplitude at a_2, a_4, ...
  UnitMode unit_mode = UnitMode::dimensionless_g;

  int n_modes() const { return 2 * n_b + 1; }

  /// Driven sites are the even interior a-modes a_2, a_4, ..., a_{N-2}.
  std::vector<int> driven_sites() const;
  bool is_driven_site(int a_index) const;
  /// Rabi amplitude at a-site `a_index`; 0 for undriven sites.
  double drive_at(int a_index) const;

  double gamma_b(int i) const { return gamma(i - 1); }  ///< decay of b_i
  double kappa_a(int i) const { return kappa(i); }      ///< decay of a_i
};

/// Uniform-chain factory: all b at omega_b_val, all a at omega_a_val, uniform
/// losses, zero drive. A convenient starting point for tests and presets.
ChainConfig make_uniform_chain(int n_b, double omega_b_val, double omega_a_val,
                               double kerr_u, double g, double gamma_val,
                               double kappa_val);

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> violations;
};

ValidationReport validate(const ChainConfig& config);

/// Throws ConfigError listing every violated invariant.
void require_valid(const ChainConfig& config);

/// Detunings relative to the drive: delta_b_i = Omega_i - omega_d for b_i,
/// delta_a_i = omega_i - omega_d for a_i. (The pairing follows the mode each
/// frequency was introduced for; the source text swaps the superscripts once,
/// which we treat as a typo.)
struct Detunings {
  Eigen::VectorXd delta_b;  ///< size N, b_1..b_N
  Eigen::VectorXd delta_a;  ///< size N+1, a_0..a_N

  double b(int i) const { return delta_b(i - 1); }
  double a(int i) const { return delta_a(i); }
};

Detunings detunings_of(const ChainConfig& config);

/// Canonical interleaved flat ordering [a_0, b_1, a_1, b_2, ..., b_N, a_N].
/// b_1 sits at flat position 1 (0-based), i.e. matrix entry (2,2) in the
/// 1-based counting used for the transmission formula.
struct ModeIndex {
  int n_b;

  explicit ModeIndex(int n) : n_b(n) {}

  int size() const { return 2 * n_b + 1; }
  int flat_a(int i) const { return 2 * i; }
  int flat_b(int i) const { return 2 * i - 1; }

  enum class Species { a, b };

  /// Inverse map: flat position -> (species, site index).
  std::pair<Species, int> site_of(int flat) const {
    if (flat % 2 == 0) return {Species::a, flat / 2};
    return {Species::b, (flat + 1) / 2};
  }
};

/// External drive in SI units.
struct DriveSpec {
  double power = 0.0;       ///< watts
  double drive_freq = 0.0;  ///< rad/s
  double kappa = 0.0;       ///< port decay of the driven cavity, rad/s
  double hbar = 1.054571817e-34;
};

/// Rabi amplitude E = sqrt(2 kappa P_d / (hbar omega_d)).
double rabi_from_power(const DriveSpec& drive);

}  // namespace kerrssh
