#include "kerrssh/topology.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include "kerrssh/errors.hpp"

namespace kerrssh {

using cxd = std::complex<double>;

BlochSample bloch_h(const SSHModel& m, int m_k) {
  if (m_k < 16) throw ConfigError("bloch_h: need at least 16 k-points");
  BlochSample s;
  s.k_grid.resize(m_k);
  s.h.resize(m_k);
  for (int j = 0; j < m_k; ++j) {
    const double k =
        -std::numbers::pi + 2.0 * std::numbers::pi * j / static_cast<double>(m_k);
    s.k_grid(j) = k;
    s.h(j) = m.v + m.w * std::exp(cxd(0.0, -k));
  }
  return s;
}

int winding_number(const BlochSample& s, double gap_tol) {
  const int n = static_cast<int>(s.h.size());
  if (n < 16) throw ConfigError("winding_number: need at least 16 samples");
  if (s.h.cwiseAbs().minCoeff() <= gap_tol)
    throw TopologyError(
        "winding_number: |h(k)| reaches the gap tolerance; winding undefined");

  double total = 0.0;
  for (int j = 0; j < n; ++j) {
    const cxd ratio = s.h((j + 1) % n) / s.h(j);
    total += std::arg(ratio);  // branch-safe: each increment is in (-pi, pi]
  }
  // i/2pi * contour integral of h'/h equals minus the accumulated phase / 2pi
  const double nu = -total / (2.0 * std::numbers::pi);
  const double rounded = std::round(nu);
  if (std::abs(nu - rounded) >= 0.01) {
    std::ostringstream msg;
    msg << "winding_number: residue " << std::abs(nu - rounded)
        << " >= 0.01; refine the k-grid";
    throw TopologyError(msg.str());
  }
  return static_cast<int>(rounded);
}

Spectrum spectrum(const Eigen::MatrixXcd& h) {
  if (h.rows() != h.cols())
    throw ConfigError("spectrum: matrix must be square");
  const double scale = std::max(h.cwiseAbs().maxCoeff(), 1.0);
  if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw ConfigError("spectrum: matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
  if (solver.info() != Eigen::Success)
    throw NumericalError("spectrum: eigensolver failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

Spectrum spectrum(const Eigen::MatrixXd& h) {
  return spectrum(Eigen::MatrixXcd(h.cast<cxd>()));
}

std::vector<int> zero_modes(const Spectrum& spec, const SSHModel& m,
                            double delta_r, double gap_fraction) {
  const double bulk_gap = 2.0 * std::abs(std::abs(m.w) - std::abs(m.v));
  if (bulk_gap <= 0.0)
    throw TopologyError("zero_modes: bulk gap vanishes (|W| = |V|)");
  std::vector<int> indices;
  for (int i = 0; i < spec.eigenvalues.size(); ++i)
    if (std::abs(spec.eigenvalues(i) - delta_r) < gap_fraction * bulk_gap)
      indices.push_back(i);
  return indices;
}

std::vector<int> b_dominant_indices(const Spectrum& spec, int n_b,
                                    double threshold) {
  const ModeIndex idx(n_b);
  if (spec.eigenvectors.rows() != idx.size())
    throw ConfigError("b_dominant_indices: vectors are not full-chain length");
  std::vector<int> indices;
  for (int c = 0; c < spec.eigenvectors.cols(); ++c) {
    double bw = 0.0;
    for (int i = 1; i <= n_b; ++i)
      bw += std::norm(spec.eigenvectors(idx.flat_b(i), c));
    const double total = spec.eigenvectors.col(c).squaredNorm();
    if (bw >= threshold * total) indices.push_back(c);
  }
  return indices;
}

EdgeProfile edge_profile(const Eigen::MatrixXcd& vectors,
                         ProfileMapping mapping) {
  const int rows = static_cast<int>(vectors.rows());
  const int n_b = mapping == ProfileMapping::ssh_only ? rows : (rows - 1) / 2;
  if (mapping == ProfileMapping::full_chain && rows != 2 * n_b + 1)
    throw ConfigError("edge_profile: full_chain vectors must have odd length");
  const ModeIndex idx(n_b);
  const int m = idx.size();

  EdgeProfile profile;
  profile.positions.resize(m);
  for (int j = 0; j < m; ++j)
    profile.positions(j) = static_cast<double>(j) / (m - 1);

  const int nv = static_cast<int>(vectors.cols());
  profile.weights = Eigen::MatrixXd::Zero(m, nv);
  profile.edge_weight.resize(nv);
  for (int c = 0; c < nv; ++c) {
    Eigen::VectorXd w = Eigen::VectorXd::Zero(m);
    if (mapping == ProfileMapping::ssh_only) {
      for (int i = 1; i <= n_b; ++i)
        w(idx.flat_b(i)) = std::norm(vectors(i - 1, c));
    } else {
      for (int j = 0; j < m; ++j) w(j) = std::norm(vectors(j, c));
    }
    const double total = w.sum();
    if (total <= 0.0)
      throw ConfigError("edge_profile: zero-norm eigenvector");
    w /= total;
    profile.weights.col(c) = w;
    profile.edge_weight(c) = w(idx.flat_b(1)) + w(idx.flat_b(2)) +
                             w(idx.flat_b(n_b - 1)) + w(idx.flat_b(n_b));
  }
  return profile;
}

}  // namespace kerrssh
