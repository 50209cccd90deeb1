#pragma once

#include <Eigen/Dense>

#include "kerrssh/bogoliubov.hpp"
#include "kerrssh/chain_config.hpp"

namespace kerrssh {

/// Effective SSH chain on the b-modes after dispersive elimination of the
/// a-modes. With uniform b-detuning Delta and squeezed-site frequency
/// xi = delta, second-order elimination gives (writing D = Delta - delta):
///   V = g^2 / D            (intra-cell bond, through an undriven a-mode)
///   W = g^2 e^{2r} / (4 D) (inter-cell bond, through a squeezed a-mode)
///   Delta_r = g^2 (4 + e^{2r}) / (4 D)  (uniform on-site shift)
///   lambda_bar = g / D     (small parameter of the elimination)
/// Topological (winding 1) when |W| > |V|, i.e. e^{2r} > 4.
struct SSHModel {
  double delta_r = 0.0;
  double v = 0.0;
  double w = 0.0;
  double lambda_bar = 0.0;
  int n_cells = 0;  ///< N/2
  double r = 0.0;
  double big_delta = 0.0;    ///< uniform b-detuning
  double small_delta = 0.0;  ///< squeezed-site frequency xi
  bool dispersive_warning = false;  ///< |lambda_bar| >= 0.2
};

/// SSHModel from couplings directly (synthetic / test use).
SSHModel ssh_from_couplings(double v, double w, double delta_r, int n_cells);

struct EffectiveOptions {
  double r_tol = 0.05;           ///< max spread of r across driven sites
  double uniformity_tol = 0.5;   ///< detuning spread allowance, units of g
  bool check_edges = true;       ///< verify the edge a-detuning rule
  double dispersive_threshold = 0.2;  ///< |lambda_bar| warning level
};

/// Extracts the SSHModel from a squeeze set over a uniform chain. Requires
/// uniform b-detunings, interior undriven a-detunings matching xi, uniform r,
/// and (unless disabled) edge a-detunings following
/// delta_a_edge = Delta + 4 (delta - Delta) / e^{2r}, which places the edge
/// b-mode shift on par with the bulk Delta_r. Violations beyond the
/// tolerances are aggregated into one ConfigError.
SSHModel effective_ssh(const ChainConfig& config, const Detunings& det,
                       const SqueezeSet& sq, const EffectiveOptions& opts = {});

/// The edge a-detuning the extraction expects for given (Delta, delta, r).
double edge_detuning_rule(double big_delta, double small_delta, double r);

/// Open-boundary N x N tridiagonal SSH matrix: alternating bonds V (1-2, 3-4,
/// ...) and W (2-3, 4-5, ...); diagonal delta_r, or 0 when rotating_frame.
Eigen::MatrixXd finite_ssh_matrix(const SSHModel& m, bool rotating_frame = false);

}  // namespace kerrssh
