// Acceptance gate: one line of output per criterion, nonzero exit if any
// fails. Each criterion carries its own runtime budget.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "kerrssh/bogoliubov.hpp"
#include "kerrssh/errors.hpp"
#include "kerrssh/cubic.hpp"
#include "kerrssh/mean_field.hpp"
#include "kerrssh/ssh.hpp"
#include "kerrssh/steady_state.hpp"
#include "kerrssh/sweep.hpp"
#include "kerrssh/topology.hpp"
#include "kerrssh/transmission.hpp"
#include "test_support.hpp"

using namespace kerrssh;
using testsupport::engineered_point;
using testsupport::symmetric_chain;
using cxd = std::complex<double>;

namespace {

int failures = 0;

struct Check {
  std::string label;
  bool ok = true;
  std::string detail;

  void require(bool condition, const std::string& what) {
    if (!condition && ok) {
      ok = false;
      detail = what;
    }
  }
};

void run_criterion(int number, const std::string& label, double budget_s,
                   const std::function<void(Check&)>& body) {
  Check check{label};
  const auto start = std::chrono::steady_clock::now();
  try {
    body(check);
  } catch (const std::exception& e) {
    check.require(false, std::string("exception: ") + e.what());
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  check.require(elapsed < budget_s,
                "runtime " + std::to_string(elapsed) + " s over budget");
  std::printf("criterion %d (%s): %s (%.2f s)%s%s\n", number, label.c_str(),
              check.ok ? "PASS" : "FAIL", elapsed,
              check.ok ? "" : " -- ", check.ok ? "" : check.detail.c_str());
  if (!check.ok) ++failures;
}

// --- criterion 1: reduced vs effective spectra over an r-sweep ---------------

void criterion_reduced_vs_effective(Check& check) {
  const double big_delta = 100.0, small_delta = 113.0;
  for (int step = 0; step < 30; ++step) {
    const double r = 0.7 + (1.4 - 0.7) * step / 29.0;
    ChainConfig c =
        symmetric_chain(big_delta, small_delta, -1.0, 1.0, 0.01, 0.01, 0.0);
    const double edge = edge_detuning_rule(big_delta, small_delta, r);
    c.omega_a(0) = edge;
    c.omega_a(6) = edge;
    const Detunings det = detunings_of(c);
    SqueezeSet sq;
    sq.sites = {squeeze_from_r(2, r, small_delta),
                squeeze_from_r(4, r, small_delta)};

    const Spectrum reduced = spectrum(reduced_hamiltonian(c, det, sq));
    const std::vector<int> kept = b_dominant_indices(reduced, 6);
    check.require(kept.size() == 6,
                  "expected 6 b-dominant branches at r = " + std::to_string(r));
    if (kept.size() != 6) return;

    EffectiveOptions opts;
    const SSHModel model = effective_ssh(c, det, sq, opts);
    const Spectrum effective = spectrum(finite_ssh_matrix(model));
    const double bandwidth = 2.0 * (std::abs(model.v) + std::abs(model.w));
    for (int j = 0; j < 6; ++j) {
      const double err = std::abs(reduced.eigenvalues(kept[j]) -
                                  (big_delta + effective.eigenvalues(j)));
      check.require(err <= 0.15 * bandwidth,
                    "spectral mismatch " + std::to_string(err / bandwidth) +
                        " of bandwidth at r = " + std::to_string(r));
    }
  }
}

// --- criterion 2: winding transition and bulk-edge correspondence ------------

void criterion_transition(Check& check) {
  const double d = 100.0 - 113.0;
  int last_nu = -1;
  double flip_at = 0.0;
  const int n = 200;
  const double r_lo = 0.3, r_hi = 1.1;
  for (int j = 0; j < n; ++j) {
    const double r = r_lo + (r_hi - r_lo) * j / (n - 1.0);
    SSHModel m = ssh_from_couplings(1.0 / d, std::exp(2.0 * r) / (4.0 * d),
                                    0.0, 3);
    m.r = r;
    int nu;
    try {
      nu = winding_number(bloch_h(m, 256));
    } catch (const TopologyError&) {
      continue;  // exactly at the gap closure
    }
    if (last_nu == 0 && nu == 1) flip_at = r;
    last_nu = nu;

    const double gap = 2.0 * std::abs(std::abs(m.w) - std::abs(m.v));
    if (gap > 0.7 * std::max(std::abs(m.v), std::abs(m.w))) {
      const auto modes =
          zero_modes(spectrum(finite_ssh_matrix(m, true)), m, 0.0);
      check.require(static_cast<int>(modes.size()) == 2 * nu,
                    "zero-mode count " + std::to_string(modes.size()) +
                        " != 2 nu at r = " + std::to_string(r));
    }
  }
  const double grid_step = (r_hi - r_lo) / (n - 1);
  check.require(std::abs(flip_at - std::log(2.0)) <= grid_step + 1e-12,
                "transition detected at r = " + std::to_string(flip_at) +
                    ", expected ln 2 within one grid step");
}

// --- criterion 3: cubic bistability and hysteresis ---------------------------

void criterion_bistability(Check& check) {
  CubicReduction red;
  red.kerr_u = -1.0;
  red.delta_tilde = cxd(-3.0, -0.1);
  red.c3 = 4.0;
  red.c2 = -12.0;
  red.c1 = 9.01;
  check.require(solve_cubic(red, 1.0).size() == 3, "expected 3 roots at E^2=1");
  check.require(solve_cubic(red, std::sqrt(0.001)).size() == 1,
                "expected 1 root at E^2=0.001");
  check.require(solve_cubic(red, std::sqrt(10.0)).size() == 1,
                "expected 1 root at E^2=10");

  // Full-chain sweep across the window (E in [0.123, 1.416]).
  const ChainConfig c = testsupport::bistable_chain(0.0);
  const Detunings det = detunings_of(c);
  const SweepResult res = hysteresis_sweep(c, det, SweepControl::rabi, 0.05,
                                           1.6, 60, SweepDirection::both);
  const auto& fwd = res.branches[0];
  const auto& bwd = res.branches[1];
  check.require(fwd.jumps.size() == 1 && bwd.jumps.size() == 1,
                "expected one jump per branch, got " +
                    std::to_string(fwd.jumps.size()) + "/" +
                    std::to_string(bwd.jumps.size()));
  if (fwd.jumps.size() == 1 && bwd.jumps.size() == 1) {
    const double up = fwd.points[fwd.jumps[0]].control;
    const double down = bwd.points[bwd.jumps[0]].control;
    check.require(up > down + 0.1, "jump controls not hysteretic");
    const size_t n = fwd.points.size();
    for (size_t j = 0; j < n; ++j) {
      const auto& f = fwd.points[j];
      const auto& b = bwd.points[n - 1 - j];
      const bool inside = f.control > down - 1e-9 && f.control < up + 1e-9;
      if (!inside)
        check.require(std::abs(f.x - b.x) <= 1e-6 * std::max(f.x, 1.0),
                      "branches disagree outside the window at control " +
                          std::to_string(f.control));
    }
  }
}

// --- criterion 4: full model vs cubic ----------------------------------------

void criterion_full_vs_cubic(Check& check) {
  const ChainConfig c = testsupport::bistable_chain(0.08);  // monostable
  const Detunings det = detunings_of(c);
  const auto roots = solve_cubic(build_cubic_reduction(c, det), 0.08);
  check.require(roots.size() == 1, "configuration not monostable");
  const SteadyState ss = newton_refine(
      c, det, symmetric_seed(c, det, roots.front().x, 0.08));
  check.require(
      std::abs(ss.x - roots.front().x) <= 1e-6 * std::max(roots.front().x, 1e-30),
      "x mismatch: " + std::to_string(ss.x) + " vs " +
          std::to_string(roots.front().x));
}

// --- criterion 5: edge-state bistability -------------------------------------

struct ProfileResult {
  double max_edge_weight = 0.0;
  double min_edge_weight = 1.0;
  size_t n_modes = 0;
};

ProfileResult profile_at(double r_star, Check& check) {
  const auto op = engineered_point(r_star);
  const Detunings det = detunings_of(op.config);
  const SteadyState ss = newton_refine(
      op.config, det, symmetric_seed(op.config, det, op.x, op.rabi));
  const SqueezeSet sq = squeeze_params(op.config, det, ss);
  check.require(std::abs(sq.mean_r() - r_star) < 0.02,
                "operating point missed r = " + std::to_string(r_star));

  const SSHModel model = effective_ssh(op.config, det, sq);
  const Spectrum spec = spectrum(finite_ssh_matrix(model));
  std::vector<int> modes;
  try {
    modes = zero_modes(spec, model, model.delta_r);
  } catch (const TopologyError&) {
  }
  if (modes.empty()) modes = {2, 3};  // central pair when no mid-gap states

  ProfileResult result;
  result.n_modes = modes.size();
  Eigen::MatrixXcd vecs(6, static_cast<long>(modes.size()));
  for (size_t j = 0; j < modes.size(); ++j)
    vecs.col(static_cast<long>(j)) = spec.eigenvectors.col(modes[j]);
  const EdgeProfile profile = edge_profile(vecs, ProfileMapping::ssh_only);
  result.max_edge_weight = profile.edge_weight.maxCoeff();
  result.min_edge_weight = profile.edge_weight.minCoeff();
  return result;
}

void criterion_edge_bistability(Check& check) {
  const ProfileResult topo = profile_at(0.9, check);
  const ProfileResult trivial = profile_at(0.6, check);
  check.require(topo.n_modes == 2, "expected 2 zero modes at r = 0.9");
  check.require(topo.min_edge_weight > trivial.max_edge_weight,
                "edge weight at r=0.9 (" +
                    std::to_string(topo.min_edge_weight) +
                    ") does not exceed r=0.6 (" +
                    std::to_string(trivial.max_edge_weight) + ")");
  check.require(topo.min_edge_weight >= 0.6,
                "zero modes carry only " +
                    std::to_string(topo.min_edge_weight) +
                    " on the outer cells");
}

// --- criterion 6: transmission spectroscopy ----------------------------------

void criterion_transmission(Check& check) {
  const double r_star = 0.95;
  const auto op = engineered_point(r_star);
  const Detunings det = detunings_of(op.config);

  // Gap window of the effective model, centered on the zero-mode reference.
  const double d = 100.0 - 113.0;
  const double v = 1.0 / d, w = std::exp(2.0 * r_star) / (4.0 * d);
  const double delta_r = (4.0 + std::exp(2.0 * r_star)) / (4.0 * d);
  const double center = 100.0 + delta_r;
  // Central half of the bulk gap: excludes band-edge features of the undriven
  // chain while keeping the mid-gap edge doublet (within a linewidth of center).
  const double half_window = 0.25 * 2.0 * std::abs(std::abs(w) - std::abs(v));

  ProbeConfig probe;
  probe.delta_p_grid = Eigen::VectorXd::LinSpaced(4000, 99.0, 101.0);
  probe.gamma_probe = 0.01;
  const double linewidth = 0.01;

  auto in_gap_peaks = [&](const ChainConfig& c, const SteadyState& ss) {
    TransmissionSpectrum spec = transmission(c, det, ss, probe);
    PeakOptions popts;
    // The finite-size zero-mode splitting is ~2.5 linewidths; keep the doublet.
    popts.min_separation = 2.0 * linewidth;
    std::vector<Peak> in_gap;
    for (const auto& p : peak_find(spec, popts))
      if (std::abs(p.delta_p - center) < half_window) in_gap.push_back(p);
    return in_gap;
  };

  // Undriven chain: same detunings, no pump.
  ChainConfig undriven = op.config;
  undriven.drive_amp.setZero();
  SteadyState vacuum;
  vacuum.amplitudes = Eigen::VectorXcd::Zero(13);
  check.require(in_gap_peaks(undriven, vacuum).empty(),
                "undriven spectrum has in-gap peaks");

  // Driven topological state: exactly 2 in-gap peaks at the zero modes.
  const SteadyState ss = newton_refine(
      op.config, det, symmetric_seed(op.config, det, op.x, op.rabi));
  check.require(ss.stable, "operating point not stable");
  const auto peaks = in_gap_peaks(op.config, ss);
  check.require(peaks.size() == 2, "expected 2 in-gap peaks, got " +
                                       std::to_string(peaks.size()));

  // Reference: mid-gap eigenfrequencies of the lossless fluctuation matrix.
  const QuadraticForm form = fluctuation_form(op.config, det, ss.amplitudes, false);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(form.dynamical_matrix());
  std::vector<double> references;
  for (long j = 0; j < solver.eigenvalues().size(); ++j) {
    const double e = solver.eigenvalues()(j).real();
    if (std::abs(e - center) < half_window) references.push_back(e);
  }
  for (const auto& p : peaks) {
    double best = 1e9;
    for (double e : references) best = std::min(best, std::abs(p.delta_p - e));
    check.require(best < linewidth,
                  "peak at " + std::to_string(p.delta_p) +
                      " is not within one linewidth of a zero mode");
  }

  // Far-detuned probe decays.
  ProbeConfig far;
  far.delta_p_grid = Eigen::VectorXd::LinSpaced(
      2, 1e3 * op.config.omega_a.cwiseAbs().maxCoeff(),
      2e3 * op.config.omega_a.cwiseAbs().maxCoeff());
  far.gamma_probe = 0.01;
  const TransmissionSpectrum tail = transmission(op.config, det, ss, far);
  check.require(std::abs(tail.t(0)) < 0.01, "|t| too large far off resonance");

  // Decoupled-mode resonance: |t| = 2.00 +- 0.01.
  ChainConfig lone = make_uniform_chain(2, 1.0, 50.0, 0.0, 1e-9, 0.01, 0.01);
  SteadyState lone_zero;
  lone_zero.amplitudes = Eigen::VectorXcd::Zero(5);
  ProbeConfig lone_probe;
  lone_probe.delta_p_grid = Eigen::VectorXd::LinSpaced(3, 0.999, 1.001);
  lone_probe.gamma_probe = 0.01;
  const TransmissionSpectrum lone_spec =
      transmission(lone, detunings_of(lone), lone_zero, lone_probe);
  check.require(std::abs(std::abs(lone_spec.t(1)) - 2.0) <= 0.01,
                "decoupled resonance |t| = " +
                    std::to_string(std::abs(lone_spec.t(1))));
}

// --- criterion 7: structural invariants on random configs --------------------

void criterion_invariants(Check& check) {
  std::mt19937 rng(1234);
  auto uniform = [&](double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  };
  for (int trial = 0; trial < 100; ++trial) {
    ChainConfig c = make_uniform_chain(
        6, uniform(-5.0, 5.0), uniform(-5.0, 5.0), -uniform(0.0, 2.0),
        uniform(0.1, 2.0), uniform(0.01, 0.5), uniform(0.01, 0.5));
    c.drive_amp.setConstant(uniform(0.0, 1.0));
    const Detunings det = detunings_of(c);

    Eigen::VectorXcd z(13);
    for (int j = 0; j < 13; ++j) z(j) = cxd(uniform(-2.0, 2.0), uniform(-2.0, 2.0));
    const QuadraticForm form = fluctuation_form(c, det, z, false);
    check.require((form.particle - form.particle.adjoint()).norm() < 1e-12,
                  "particle block not Hermitian");
    check.require(
        (form.anomalous - form.anomalous.transpose()).norm() < 1e-12,
        "anomalous block not symmetric");
    const Eigen::MatrixXcd bdg = form.bdg_matrix();
    check.require((bdg.bottomLeftCorner(13, 13) -
                   bdg.topRightCorner(13, 13).conjugate())
                          .norm() == 0.0,
                  "BdG conjugate blocks broken");

    SqueezeSet sq;
    const double xi = uniform(0.5, 5.0);
    const double r = uniform(0.0, 1.5);
    for (int site : c.driven_sites())
      sq.sites.push_back(squeeze_from_r(site, r, xi));
    ReducedOptions opts;
    opts.force = true;
    const Eigen::MatrixXd h = reduced_hamiltonian(c, det, sq, opts);
    check.require((h - h.transpose()).cwiseAbs().maxCoeff() < 1e-12,
                  "reduced Hamiltonian not symmetric");

    for (const auto& s : sq.sites) {
      check.require(std::abs(s.xi * std::cosh(2.0 * s.r) - s.delta_tilde_a) <=
                        1e-10 * std::abs(s.delta_tilde_a),
                    "Bogoliubov round trip (cosh) broken");
      check.require(std::abs(s.xi * std::sinh(2.0 * s.r) -
                             2.0 * std::abs(s.u_tilde)) <=
                        1e-10 * std::max(std::abs(s.u_tilde), 1e-30),
                    "Bogoliubov round trip (sinh) broken");
    }

    const double v = uniform(0.05, 2.0), w2 = uniform(0.05, 2.0);
    if (std::abs(w2 - v) > 1e-3) {
      const SSHModel m = ssh_from_couplings(v, w2, 0.0, 3);
      const Spectrum s = spectrum(finite_ssh_matrix(m, true));
      for (int j = 0; j < 6; ++j)
        check.require(std::abs(s.eigenvalues(j) + s.eigenvalues(5 - j)) < 1e-10,
                      "chiral symmetry broken");
      const int nu = winding_number(bloch_h(m, 64));
      check.require(winding_number(bloch_h(m, 128)) == nu,
                    "winding changes under grid refinement");
    }
  }
}

}  // namespace

int main() {
  run_criterion(1, "reduced vs effective spectra", 1.0,
                criterion_reduced_vs_effective);
  run_criterion(2, "topological transition", 1.0, criterion_transition);
  run_criterion(3, "bistability and hysteresis", 5.0, criterion_bistability);
  run_criterion(4, "full model vs cubic", 1.0, criterion_full_vs_cubic);
  run_criterion(5, "edge-state bistability", 5.0, criterion_edge_bistability);
  run_criterion(6, "transmission spectroscopy", 2.0, criterion_transmission);
  run_criterion(7, "structural invariants", 10.0, criterion_invariants);
  if (failures > 0) {
    std::printf("%d criterion(s) FAILED\n", failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
