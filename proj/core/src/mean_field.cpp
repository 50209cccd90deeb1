#include "kerrssh/mean_field.hpp"

#include <complex>

#include "kerrssh/errors.hpp"

namespace kerrssh {

using cxd = std::complex<double>;
constexpr cxd kI{0.0, 1.0};

Eigen::VectorXcd mean_field_rhs(const ChainConfig& config,
                                const Detunings& det,
                                const Eigen::VectorXcd& state) {
  const int n = config.n_b;
  const ModeIndex idx(n);
  if (state.size() != idx.size())
    throw ConfigError("mean_field_rhs: state must have length 2N+1");

  Eigen::VectorXcd deriv(idx.size());
  const double g = config.g;
  const double u = config.kerr_u;

  for (int i = 1; i <= n; ++i) {
    const cxd b = state(idx.flat_b(i));
    deriv(idx.flat_b(i)) =
        -kI * (det.b(i) - kI * config.gamma_b(i)) * b -
        kI * g * (state(idx.flat_a(i - 1)) + state(idx.flat_a(i)));
  }
  for (int i = 0; i <= n; ++i) {
    const cxd a = state(idx.flat_a(i));
    cxd v = -kI * (det.a(i) - kI * config.kappa_a(i)) * a;
    if (i >= 1) v += -kI * g * state(idx.flat_b(i));
    if (i <= n - 1) v += -kI * g * state(idx.flat_b(i + 1));
    if (config.is_driven_site(i))
      v += -2.0 * kI * u * std::norm(a) * a + config.drive_at(i);
    deriv(idx.flat_a(i)) = v;
  }
  return deriv;
}

Eigen::MatrixXcd QuadraticForm::dynamical_matrix() const {
  const int m = size();
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(2 * m, 2 * m);
  const Eigen::MatrixXcd damping =
      with_losses ? Eigen::MatrixXcd(-kI * loss.asDiagonal().toDenseMatrix())
                  : Eigen::MatrixXcd::Zero(m, m);
  h.topLeftCorner(m, m) = particle + damping;
  h.topRightCorner(m, m) = anomalous;
  h.bottomLeftCorner(m, m) = -anomalous.conjugate();
  h.bottomRightCorner(m, m) = -particle.conjugate() + damping;
  return h;
}

Eigen::MatrixXcd QuadraticForm::bdg_matrix() const {
  const int m = size();
  Eigen::MatrixXcd h(2 * m, 2 * m);
  h.topLeftCorner(m, m) = particle;
  h.topRightCorner(m, m) = anomalous;
  h.bottomLeftCorner(m, m) = anomalous.conjugate();
  h.bottomRightCorner(m, m) = particle.conjugate();
  return h;
}

QuadraticForm fluctuation_form(const ChainConfig& config, const Detunings& det,
                               const Eigen::VectorXcd& state,
                               bool with_losses) {
  const int n = config.n_b;
  const ModeIndex idx(n);
  if (state.size() != idx.size())
    throw ConfigError("fluctuation_form: state must have length 2N+1");
  const int m = idx.size();

  QuadraticForm form;
  form.particle = Eigen::MatrixXcd::Zero(m, m);
  form.anomalous = Eigen::MatrixXcd::Zero(m, m);
  form.loss = Eigen::VectorXd::Zero(m);
  form.with_losses = with_losses;

  const double g = config.g;
  const double u = config.kerr_u;

  for (int i = 1; i <= n; ++i) {
    const int fb = idx.flat_b(i);
    form.particle(fb, fb) = det.b(i);
    form.loss(fb) = config.gamma_b(i);
    for (int a : {i - 1, i}) {
      const int fa = idx.flat_a(a);
      form.particle(fb, fa) = g;
      form.particle(fa, fb) = g;
    }
  }
  for (int i = 0; i <= n; ++i) {
    const int fa = idx.flat_a(i);
    form.loss(fa) = config.kappa_a(i);
    double diag = det.a(i);
    if (config.is_driven_site(i)) {
      const cxd a = state(fa);
      diag += 4.0 * u * std::norm(a);
      form.anomalous(fa, fa) = 2.0 * u * a * a;
    }
    form.particle(fa, fa) = diag;
  }
  return form;
}

}  // namespace kerrssh
