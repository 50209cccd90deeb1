#include "kerrssh/steady_state.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "kerrssh/errors.hpp"

namespace kerrssh {

using cxd = std::complex<double>;
constexpr cxd kI{0.0, 1.0};

namespace {

double max_norm(const Eigen::VectorXcd& v) {
  return v.cwiseAbs().maxCoeff();
}

SteadyState finish(const ChainConfig& config, const Detunings& det,
                   Eigen::VectorXcd z, double residual) {
  SteadyState ss;
  ss.amplitudes = std::move(z);
  ss.residual = residual;
  auto driven = config.driven_sites();
  ss.x = driven.empty() ? 0.0 : std::norm(ss.amplitudes(2 * driven.front()));
  ss.stable = stability_check(config, det, ss).stable;
  return ss;
}

}  // namespace

SteadyState evolve_to_steady(const ChainConfig& config, const Detunings& det,
                             const Eigen::VectorXcd& initial,
                             const EvolveOptions& opts) {
  require_valid(config);
  const double min_loss =
      std::min(config.gamma.minCoeff(), config.kappa.minCoeff());
  if (!(min_loss > 0.0))
    throw ConfigError(
        "evolve_to_steady: all decay rates must be > 0 for convergence");

  double scale = std::max({det.delta_b.cwiseAbs().maxCoeff(),
                           det.delta_a.cwiseAbs().maxCoeff(), config.g,
                           config.drive_amp.size() > 0
                               ? config.drive_amp.maxCoeff()
                               : 0.0,
                           1.0});
  const double dt = opts.dt > 0.0 ? opts.dt : 0.01 / scale;
  const double t_max = opts.t_max > 0.0 ? opts.t_max : 2000.0 / min_loss;

  Eigen::VectorXcd z = initial;
  double res = 0.0;
  for (double t = 0.0; t < t_max; t += dt) {
    const Eigen::VectorXcd k1 = mean_field_rhs(config, det, z);
    res = max_norm(k1);
    if (res < opts.tol) return finish(config, det, std::move(z), res);
    const Eigen::VectorXcd k2 = mean_field_rhs(config, det, z + 0.5 * dt * k1);
    const Eigen::VectorXcd k3 = mean_field_rhs(config, det, z + 0.5 * dt * k2);
    const Eigen::VectorXcd k4 = mean_field_rhs(config, det, z + dt * k3);
    z += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  std::ostringstream msg;
  msg << "evolve_to_steady: residual " << res << " > tol " << opts.tol
      << " at t_max " << t_max;
  throw ConvergenceError(msg.str(), std::move(z), res);
}

SteadyState newton_refine(const ChainConfig& config, const Detunings& det,
                          const Eigen::VectorXcd& guess,
                          const NewtonOptions& opts) {
  require_valid(config);
  if (!guess.allFinite())
    throw ConfigError("newton_refine: guess must be finite");

  const int m = config.n_modes();
  Eigen::VectorXcd z = guess;
  Eigen::VectorXcd f = mean_field_rhs(config, det, z);
  double res = max_norm(f);

  for (int it = 0; it < opts.max_iter; ++it) {
    if (res < opts.tol) return finish(config, det, std::move(z), res);

    const QuadraticForm form = fluctuation_form(config, det, z, true);
    const Eigen::MatrixXcd jac = -kI * form.dynamical_matrix();
    Eigen::VectorXcd rhs(2 * m);
    rhs.head(m) = -f;
    rhs.tail(m) = -f.conjugate();

    Eigen::FullPivLU<Eigen::MatrixXcd> lu(jac);
    if (!lu.isInvertible())
      throw SingularJacobianError("newton_refine: singular Jacobian");
    const Eigen::VectorXcd step = lu.solve(rhs).head(m);

    double lambda = 1.0;
    bool improved = false;
    for (int h = 0; h <= opts.max_halvings; ++h) {
      const Eigen::VectorXcd zn = z + lambda * step;
      const Eigen::VectorXcd fn = mean_field_rhs(config, det, zn);
      const double rn = max_norm(fn);
      if (rn < res || rn < opts.tol) {
        z = zn;
        f = fn;
        res = rn;
        improved = true;
        break;
      }
      lambda *= 0.5;
    }
    if (!improved) {
      std::ostringstream msg;
      msg << "newton_refine: no descent after " << opts.max_halvings
          << " halvings, residual " << res;
      throw ConvergenceError(msg.str(), std::move(z), res);
    }
  }
  if (res < opts.tol) return finish(config, det, std::move(z), res);
  std::ostringstream msg;
  msg << "newton_refine: residual " << res << " > tol " << opts.tol << " after "
      << opts.max_iter << " iterations";
  throw ConvergenceError(msg.str(), std::move(z), res);
}

StabilityResult stability_check(const ChainConfig& config, const Detunings& det,
                                const SteadyState& ss) {
  const QuadraticForm form =
      fluctuation_form(config, det, ss.amplitudes, true);
  const Eigen::MatrixXcd jac = -kI * form.dynamical_matrix();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(jac, false);
  StabilityResult result;
  result.eigenvalues = solver.eigenvalues();
  result.stable = result.eigenvalues.real().maxCoeff() < 0.0;
  return result;
}

QuadraticForm build_fluctuation_hamiltonian(const ChainConfig& config,
                                            const Detunings& det,
                                            const SteadyState& ss,
                                            bool with_losses,
                                            double residual_tol) {
  if (ss.amplitudes.size() != config.n_modes())
    throw ConfigError("build_fluctuation_hamiltonian: missing steady state");
  if (!(ss.residual <= residual_tol)) {
    std::ostringstream msg;
    msg << "build_fluctuation_hamiltonian: steady-state residual "
        << ss.residual << " above " << residual_tol;
    throw ConfigError(msg.str());
  }
  return fluctuation_form(config, det, ss.amplitudes, with_losses);
}

}  // namespace kerrssh
