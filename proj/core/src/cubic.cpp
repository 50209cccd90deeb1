#include "kerrssh/cubic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "kerrssh/errors.hpp"

namespace kerrssh {

using cxd = std::complex<double>;
constexpr cxd kI{0.0, 1.0};

namespace {

bool close(double a, double b, double tol = 1e-9) {
  return std::abs(a - b) <= tol * std::max({std::abs(a), std::abs(b), 1.0});
}

void require_symmetric_n6(const ChainConfig& config, const Detunings& det) {
  if (config.n_b != 6)
    throw ConfigError("cubic reduction requires N = 6");
  const int n = config.n_b;
  bool ok = true;
  for (int i = 0; i <= n; ++i)
    ok = ok && close(det.a(i), det.a(n - i)) &&
         close(config.kappa_a(i), config.kappa_a(n - i));
  for (int i = 1; i <= n; ++i)
    ok = ok && close(det.b(i), det.b(n + 1 - i)) &&
         close(config.gamma_b(i), config.gamma_b(n + 1 - i));
  if (config.drive_amp.size() == 2)
    ok = ok && close(config.drive_amp(0), config.drive_amp(1));
  if (!ok)
    throw ConfigError(
        "cubic reduction requires parameters mirror-symmetric about a_3");
}

void guard(const cxd& den, const char* name) {
  if (std::abs(den) < 1e-12) {
    std::ostringstream msg;
    msg << "cubic reduction: denominator " << name << " vanishes";
    throw PoleError(msg.str());
  }
}

double poly(const CubicReduction& red, double x) {
  return ((red.c3 * x + red.c2) * x + red.c1) * x;
}

double dpoly(const CubicReduction& red, double x) {
  return (3.0 * red.c3 * x + 2.0 * red.c2) * x + red.c1;
}

}  // namespace

CubicReduction build_cubic_reduction(const ChainConfig& config,
                                     const Detunings& det) {
  require_valid(config);
  require_symmetric_n6(config, det);

  const double g = config.g;
  auto da = [&](int i) { return cxd(det.a(i), -config.kappa_a(i)); };
  auto db = [&](int i) { return cxd(det.b(i), -config.gamma_b(i)); };

  CubicReduction red;
  red.kerr_u = config.kerr_u;

  guard(da(0), "delta_a_0");
  red.eff_delta_b1 = db(1) - g * g / da(0);
  guard(red.eff_delta_b1, "eff_delta_b1");
  red.eff_delta_a1 = da(1) - g * g / red.eff_delta_b1;
  guard(red.eff_delta_a1, "eff_delta_a1");

  const cxd chi1_den = db(2) - g * g / red.eff_delta_a1;
  guard(chi1_den, "chi1 denominator (delta_b_2 - g^2/eff_delta_a1)");
  red.chi1 = -g / chi1_den;

  guard(da(3), "delta_a_3");
  const cxd chi2_den = g - db(3) * da(3) / (2.0 * g);
  guard(chi2_den, "chi2 denominator (g - delta_b_3 delta_a_3 / 2g)");
  red.chi2 = da(3) / (2.0 * chi2_den);

  const cxd response = da(2) + g * (red.chi1 + red.chi2);
  red.delta_tilde = -std::conj(response);

  const double u = config.kerr_u;
  red.c3 = 4.0 * u * u;
  red.c2 = -4.0 * u * red.delta_tilde.real();
  red.c1 = std::norm(red.delta_tilde);
  return red;
}

std::vector<CubicRoot> solve_cubic(const CubicReduction& red, double rabi) {
  if (rabi < 0.0) throw ConfigError("solve_cubic: rabi must be >= 0");
  const double e2 = rabi * rabi;

  std::vector<double> roots;
  if (red.c3 == 0.0) {
    if (red.c1 == 0.0)
      throw NumericalError("solve_cubic: degenerate (U = 0, delta_tilde = 0)");
    roots.push_back(e2 / red.c1);
  } else {
    // Normalized: x^3 + p2 x^2 + p1 x + p0 = 0
    const double p2 = red.c2 / red.c3;
    const double p1 = red.c1 / red.c3;
    const double p0 = -e2 / red.c3;
    // Depressed: t^3 + pt + q with x = t - p2/3
    const double p = p1 - p2 * p2 / 3.0;
    const double q = 2.0 * p2 * p2 * p2 / 27.0 - p2 * p1 / 3.0 + p0;
    const double disc = q * q / 4.0 + p * p * p / 27.0;
    if (disc > 0.0) {
      const double s = std::sqrt(disc);
      const double cb = [](double v) {
        return std::copysign(std::cbrt(std::abs(v)), v);
      }(-q / 2.0 + s);
      const double cb2 = [](double v) {
        return std::copysign(std::cbrt(std::abs(v)), v);
      }(-q / 2.0 - s);
      roots.push_back(cb + cb2 - p2 / 3.0);
    } else {
      const double rho = std::sqrt(-p * p * p / 27.0);
      const double theta = std::acos(std::clamp(-q / (2.0 * rho), -1.0, 1.0));
      const double mag = 2.0 * std::sqrt(-p / 3.0);
      for (int k = 0; k < 3; ++k)
        roots.push_back(mag * std::cos((theta + 2.0 * std::numbers::pi * k) /
                                       3.0) -
                        p2 / 3.0);
    }
    // Newton polish
    for (double& x : roots) {
      for (int it = 0; it < 8; ++it) {
        const double f = poly(red, x) - e2;
        const double df = dpoly(red, x);
        if (df == 0.0) break;
        const double step = f / df;
        x -= step;
        if (std::abs(step) < 1e-15 * std::max(std::abs(x), 1.0)) break;
      }
    }
  }

  std::sort(roots.begin(), roots.end());
  std::vector<CubicRoot> result;
  for (double x : roots) {
    if (x < -1e-12) continue;
    x = std::max(x, 0.0);
    if (!result.empty() && close(result.back().x, x, 1e-10)) continue;
    result.push_back({x, BranchStability::candidate_stable});
  }
  if (result.size() == 3) result[1].tag = BranchStability::unstable;
  return result;
}

double required_drive(const CubicReduction& red, double x) {
  if (x < 0.0) throw ConfigError("required_drive: x must be >= 0");
  const double e2 = poly(red, x);
  if (e2 < 0.0)
    throw NumericalError("required_drive: negative E^2 (x off the curve)");
  return std::sqrt(e2);
}

Eigen::VectorXcd symmetric_seed(const ChainConfig& config, const Detunings& det,
                                double x, double rabi) {
  const CubicReduction red = build_cubic_reduction(config, det);
  const double g = config.g;
  const double u = config.kerr_u;
  auto da = [&](int i) { return cxd(det.a(i), -config.kappa_a(i)); };

  const cxd denom = red.response() + 2.0 * u * x;
  guard(denom, "response + 2Ux");
  const cxd a2 = -kI * rabi / denom;
  const cxd b2 = red.chi1 * a2;
  const cxd b3 = red.chi2 * a2;
  const cxd a1 = -g * b2 / red.eff_delta_a1;
  const cxd b1 = -g * a1 / red.eff_delta_b1;
  const cxd a0 = -g * b1 / da(0);
  const cxd a3 = -2.0 * g * b3 / da(3);

  const ModeIndex idx(config.n_b);
  Eigen::VectorXcd z = Eigen::VectorXcd::Zero(idx.size());
  z(idx.flat_a(0)) = a0;
  z(idx.flat_b(1)) = b1;
  z(idx.flat_a(1)) = a1;
  z(idx.flat_b(2)) = b2;
  z(idx.flat_a(2)) = a2;
  z(idx.flat_b(3)) = b3;
  z(idx.flat_a(3)) = a3;
  z(idx.flat_b(4)) = b3;
  z(idx.flat_a(4)) = a2;
  z(idx.flat_b(5)) = b2;
  z(idx.flat_a(5)) = a1;
  z(idx.flat_b(6)) = b1;
  z(idx.flat_a(6)) = a0;
  return z;
}

}  // namespace kerrssh
