#include <algorithm>
#include <cmath>
#include <complex>

#include <doctest.h>

#include "kerrssh/cubic.hpp"
#include "kerrssh/errors.hpp"
#include "kerrssh/steady_state.hpp"
#include "kerrssh/transmission.hpp"
#include "test_support.hpp"

using namespace kerrssh;
using testsupport::bistable_chain;
using testsupport::symmetric_chain;
using cxd = std::complex<double>;

namespace {

SteadyState zero_state(const ChainConfig& c) {
  SteadyState ss;
  ss.amplitudes = Eigen::VectorXcd::Zero(c.n_modes());
  return ss;
}

}  // namespace

TEST_CASE("decoupled-mode resonance gives |t| = 2") {
  // Negligible coupling isolates b_1 at delta_b = 1.
  ChainConfig c = make_uniform_chain(2, 1.0, 50.0, 0.0, 1e-9, 0.02, 0.02);
  const Detunings det = detunings_of(c);
  ProbeConfig probe;
  probe.delta_p_grid = Eigen::VectorXd::LinSpaced(3, 0.999, 1.001);
  probe.gamma_probe = 0.02;
  const TransmissionSpectrum spec = transmission(c, det, zero_state(c), probe);
  CHECK(std::abs(spec.t(1)) == doctest::Approx(2.0).epsilon(1e-4));
}

TEST_CASE("|t| vanishes far off resonance") {
  const ChainConfig c = symmetric_chain(2.0, 5.0, 0.0, 1.0, 0.1, 0.1, 0.0);
  const Detunings det = detunings_of(c);
  const double far = 1e3 * 5.0;
  ProbeConfig probe;
  probe.delta_p_grid = Eigen::VectorXd::LinSpaced(2, far, 2.0 * far);
  probe.gamma_probe = 0.1;
  const TransmissionSpectrum spec = transmission(c, det, zero_state(c), probe);
  CHECK(std::abs(spec.t(0)) < 0.01);
  CHECK(std::abs(spec.t(1)) < 0.01);
}

TEST_CASE("reciprocity: mirrored probe yields the mirrored spectrum") {
  const ChainConfig c = symmetric_chain(2.0, 5.0, 0.0, 1.0, 0.1, 0.1, 0.0);
  const Detunings det = detunings_of(c);
  ProbeConfig probe;
  probe.delta_p_grid = Eigen::VectorXd::LinSpaced(101, -2.0, 8.0);
  probe.gamma_probe = 0.1;
  probe.probe_b = 1;
  const TransmissionSpectrum left = transmission(c, det, zero_state(c), probe);
  probe.probe_b = 6;
  const TransmissionSpectrum right = transmission(c, det, zero_state(c), probe);
  CHECK((left.t.cwiseAbs() - right.t.cwiseAbs()).maxCoeff() < 1e-10);
}

TEST_CASE("unstable steady state is refused") {
  const double rabi = 1.0;
  const ChainConfig c = bistable_chain(rabi);
  const Detunings det = detunings_of(c);
  const auto roots = solve_cubic(build_cubic_reduction(c, det), rabi);
  REQUIRE(roots.size() == 3);
  const SteadyState mid =
      newton_refine(c, det, symmetric_seed(c, det, roots[1].x, rabi));
  REQUIRE_FALSE(mid.stable);
  ProbeConfig probe;
  probe.delta_p_grid = Eigen::VectorXd::LinSpaced(4, -1.0, 1.0);
  probe.gamma_probe = 0.1;
  CHECK_THROWS_AS(transmission(c, det, mid, probe), UnstableStateError);
}

TEST_CASE("zero losses are refused") {
  ChainConfig c = symmetric_chain(2.0, 5.0, 0.0, 1.0, 0.1, 0.1, 0.0);
  c.gamma.setZero();
  ProbeConfig probe;
  probe.delta_p_grid = Eigen::VectorXd::LinSpaced(4, -1.0, 1.0);
  CHECK_THROWS_AS(transmission(c, detunings_of(c), zero_state(c), probe),
                  ConfigError);
}

TEST_CASE("peak positions track the dynamical-matrix eigenvalues") {
  const ChainConfig c = symmetric_chain(2.0, 9.0, 0.0, 1.0, 0.01, 0.01, 0.0);
  const Detunings det = detunings_of(c);
  ProbeConfig probe;
  probe.delta_p_grid = Eigen::VectorXd::LinSpaced(6000, 0.0, 12.0);
  probe.gamma_probe = 0.01;
  TransmissionSpectrum spec = transmission(c, det, zero_state(c), probe);
  PeakOptions popts;
  popts.min_separation = 4.0 * 0.01;
  spec.peaks = peak_find(spec, popts);
  REQUIRE_FALSE(spec.peaks.empty());

  const StabilityResult stab = stability_check(c, det, zero_state(c));
  const double linewidth = 0.01;
  for (const auto& peak : spec.peaks) {
    double best = 1e9;
    for (long j = 0; j < stab.eigenvalues.size(); ++j)
      best = std::min(best,
                      std::abs(peak.delta_p + stab.eigenvalues(j).imag()));
    CHECK(best < linewidth);
  }
}

TEST_CASE("peak_find on synthetic Lorentzians") {
  auto lorentzian = [](double x, double x0, double w) {
    return 1.0 / (1.0 + (x - x0) * (x - x0) / (w * w));
  };
  TransmissionSpectrum spec;
  const int n = 2001;
  spec.delta_p = Eigen::VectorXd::LinSpaced(n, -10.0, 10.0);
  spec.t.resize(n);

  SUBCASE("a single line yields one peak at its center") {
    for (int j = 0; j < n; ++j)
      spec.t(j) = lorentzian(spec.delta_p(j), 1.5, 0.3);
    const auto peaks = peak_find(spec);
    REQUIRE(peaks.size() == 1);
    CHECK(peaks[0].delta_p == doctest::Approx(1.5).epsilon(1e-2));
  }
  SUBCASE("two lines ten linewidths apart yield two peaks") {
    for (int j = 0; j < n; ++j)
      spec.t(j) = lorentzian(spec.delta_p(j), -2.0, 0.3) +
                  lorentzian(spec.delta_p(j), 1.0, 0.3);
    PeakOptions opts;
    opts.min_separation = 1.2;
    const auto peaks = peak_find(spec, opts);
    REQUIRE(peaks.size() == 2);
    CHECK(peaks[0].delta_p == doctest::Approx(-2.0).epsilon(1e-2));
    CHECK(peaks[1].delta_p == doctest::Approx(1.0).epsilon(1e-2));
  }
  SUBCASE("too-coarse grid for the requested separation is refused") {
    for (int j = 0; j < n; ++j) spec.t(j) = 1.0;
    PeakOptions opts;
    opts.min_separation = 0.02;  // grid step is 0.01: resolution too coarse
    CHECK_THROWS_AS(peak_find(spec, opts), ConfigError);
  }
}
