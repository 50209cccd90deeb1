#pragma once

#include <vector>

#include <Eigen/Dense>

#include "kerrssh/chain_config.hpp"
#include "kerrssh/ssh.hpp"

namespace kerrssh {

/// h(k) = V + W e^{-ik} on a uniform k-grid over [-pi, pi). Externally
/// supplied samples are accepted too, so synthetic windings > 1 are testable.
struct BlochSample {
  Eigen::VectorXd k_grid;
  Eigen::VectorXcd h;
};

BlochSample bloch_h(const SSHModel& m, int m_k);

/// Winding of h(k) around the origin: branch-safe phase accumulation over the
/// closed loop, divided by 2 pi and rounded. Throws TopologyError when
/// min |h| <= gap_tol (gap closure) or the pre-rounding residue is >= 0.01
/// (grid too coarse).
int winding_number(const BlochSample& s, double gap_tol = 1e-6);

struct Spectrum {
  Eigen::VectorXd eigenvalues;   ///< ascending
  Eigen::MatrixXcd eigenvectors;  ///< orthonormal columns, same order
};

/// Dense Hermitian diagonalization; refuses non-Hermitian input (tol 1e-10).
/// Lossy matrices belong to the transmission solver, not here.
Spectrum spectrum(const Eigen::MatrixXcd& h);
Spectrum spectrum(const Eigen::MatrixXd& h);

/// Eigenvalue indices within the bulk gap around the reference energy
/// delta_r: |E - delta_r| < gap_fraction * 2|W - V|. Pass delta_r = 0 for
/// rotating-frame spectra. Throws TopologyError when the bulk gap vanishes.
std::vector<int> zero_modes(const Spectrum& spec, const SSHModel& m,
                            double delta_r, double gap_fraction = 0.3);

/// Indices of eigenvectors carrying at least `threshold` of their weight on
/// b-sites of the full-chain ordering; used to drop far-detuned a-dominant
/// branches before comparing against the effective SSH spectrum.
std::vector<int> b_dominant_indices(const Spectrum& spec, int n_b,
                                    double threshold = 0.5);

/// |psi|^2 per selected eigenvector, mapped onto the 2N+1 equidistant chain
/// positions s_j = j / 2N. ssh_only input vectors (length N) place their
/// weight on the b-positions with zeros on a-positions; full_chain vectors
/// (length 2N+1) are used as-is.
struct EdgeProfile {
  Eigen::VectorXd positions;       ///< size 2N+1, s_j in [0, 1]
  Eigen::MatrixXd weights;         ///< (2N+1) x n_vectors, columns sum to 1
  Eigen::VectorXd edge_weight;     ///< per vector, weight on b_1,b_2,b_{N-1},b_N
};

enum class ProfileMapping { ssh_only, full_chain };

EdgeProfile edge_profile(const Eigen::MatrixXcd& vectors,
                         ProfileMapping mapping);

}  // namespace kerrssh
