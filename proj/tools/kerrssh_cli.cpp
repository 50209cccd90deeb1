// Command-line driver for the Kerr-chain pipeline: steady states, hysteresis
// sweeps, SSH topology extraction, and probe transmission. Loads a JSON
// config, applies --set overrides, and writes CSV/JSON artifacts plus a run
// manifest into the output directory.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kerrssh/bogoliubov.hpp"
#include "kerrssh/chain_config.hpp"
#include "kerrssh/cubic.hpp"
#include "kerrssh/errors.hpp"
#include "kerrssh/ssh.hpp"
#include "kerrssh/steady_state.hpp"
#include "kerrssh/sweep.hpp"
#include "kerrssh/topology.hpp"
#include "kerrssh/transmission.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

using json = nlohmann::json;
namespace fs = std::filesystem;
using namespace kerrssh;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.16e", v);
  return buf;
}

Eigen::VectorXd vec_from_json(const json& j, const std::string& key) {
  if (!j.at(key).is_array())
    throw ConfigError("config: \"" + key + "\" must be an array");
  std::vector<double> v = j.at(key).get<std::vector<double>>();
  return Eigen::Map<Eigen::VectorXd>(v.data(), static_cast<long>(v.size()));
}

ChainConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("config parse error in " + path + ": " + e.what());
  }
  ChainConfig c;
  try {
    c.n_b = j.at("n_b").get<int>();
    c.omega_b = vec_from_json(j, "omega_b");
    c.omega_a = vec_from_json(j, "omega_a");
    c.kerr_u = j.at("kerr_u").get<double>();
    c.g = j.at("g").get<double>();
    c.gamma = vec_from_json(j, "gamma");
    c.kappa = vec_from_json(j, "kappa");
    c.drive_freq = j.at("drive_freq").get<double>();
    c.drive_amp = vec_from_json(j, "drive_amp");
    const std::string mode = j.value("unit_mode", "dimensionless_g");
    if (mode == "dimensionless_g")
      c.unit_mode = UnitMode::dimensionless_g;
    else if (mode == "si")
      c.unit_mode = UnitMode::si;
    else
      throw ConfigError("config: unknown unit_mode \"" + mode + "\"");
  } catch (const json::exception& e) {
    throw ConfigError("config " + path + ": " + e.what());
  }
  return c;
}

// --set key=value, with key either a scalar field name or array.index.
void apply_override(ChainConfig& c, const std::string& kv) {
  const auto eq = kv.find('=');
  if (eq == std::string::npos)
    throw ConfigError("--set expects key=value, got: " + kv);
  const std::string key = kv.substr(0, eq);
  const std::string value = kv.substr(eq + 1);

  std::string name = key;
  int index = -1;
  if (const auto dot = key.find('.'); dot != std::string::npos) {
    name = key.substr(0, dot);
    index = std::stoi(key.substr(dot + 1));
  }

  auto scalar = [&]() {
    try {
      return std::stod(value);
    } catch (const std::exception&) {
      throw ConfigError("--set " + key + ": not a number: " + value);
    }
  };
  auto elem = [&](Eigen::VectorXd& v) {
    if (index < 0 || index >= v.size())
      throw ConfigError("--set " + key + ": index out of range");
    v(index) = scalar();
  };
  auto whole = [&](Eigen::VectorXd& v) {
    if (index >= 0)
      elem(v);
    else
      v.setConstant(scalar());
  };

  if (name == "n_b")
    c.n_b = static_cast<int>(scalar());
  else if (name == "kerr_u")
    c.kerr_u = scalar();
  else if (name == "g")
    c.g = scalar();
  else if (name == "drive_freq")
    c.drive_freq = scalar();
  else if (name == "omega_b")
    whole(c.omega_b);
  else if (name == "omega_a")
    whole(c.omega_a);
  else if (name == "gamma")
    whole(c.gamma);
  else if (name == "kappa")
    whole(c.kappa);
  else if (name == "drive_amp")
    whole(c.drive_amp);
  else
    throw ConfigError("--set: unknown key \"" + name + "\"");
}

struct RunContext {
  std::string command;
  std::string config_path;
  std::vector<std::string> overrides;
  fs::path out_dir;
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();

  ChainConfig config;
  Detunings det;

  void prepare() {
    config = load_config(config_path);
    for (const auto& kv : overrides) apply_override(config, kv);
    require_valid(config);
    det = detunings_of(config);
    fs::create_directories(out_dir);
  }

  void write_manifest() const {
    json m;
    m["command"] = command;
    m["config_path"] = config_path;
    m["overrides"] = overrides;
    m["output_dir"] = out_dir.string();
    m["tool_version"] = kVersion;
    m["duration_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    std::ofstream out(out_dir / "run_manifest.json");
    out << m.dump(2) << "\n";
  }
};

double max_drive(const ChainConfig& c) {
  return c.drive_amp.size() > 0 ? c.drive_amp.maxCoeff() : 0.0;
}

// Operating-point solve: undriven chains sit at zero; symmetric N=6 chains
// seed from the cubic root of the requested branch; everything else evolves
// from vacuum. Newton failure or an unstable landing falls back to evolution.
SteadyState solve_operating_point(const ChainConfig& config,
                                  const Detunings& det,
                                  const std::string& branch) {
  const Eigen::VectorXcd zero = Eigen::VectorXcd::Zero(config.n_modes());
  if (max_drive(config) == 0.0) return newton_refine(config, det, zero);

  std::optional<CubicReduction> red;
  try {
    red = build_cubic_reduction(config, det);
  } catch (const ConfigError&) {
    // not symmetric N=6; fall through to the generic path
  }
  if (red) {
    const double rabi = config.drive_amp(0);
    const auto roots = solve_cubic(*red, rabi);
    double x = branch == "high" ? roots.back().x : roots.front().x;
    try {
      SteadyState ss = newton_refine(
          config, det, symmetric_seed(config, det, x, rabi));
      if (ss.stable) return ss;
    } catch (const NumericalError&) {
    }
  }
  SteadyState ss = evolve_to_steady(config, det, zero);
  return newton_refine(config, det, ss.amplitudes);
}

json state_to_json(const SteadyState& ss) {
  json amps = json::array();
  for (long i = 0; i < ss.amplitudes.size(); ++i)
    amps.push_back({ss.amplitudes(i).real(), ss.amplitudes(i).imag()});
  return {{"amplitudes", amps},
          {"x", ss.x},
          {"residual", ss.residual},
          {"stable", ss.stable}};
}

int cmd_steady(RunContext& ctx, const std::string& branch) {
  ctx.prepare();
  const SteadyState ss = solve_operating_point(ctx.config, ctx.det, branch);
  {
    std::ofstream out(ctx.out_dir / "steady_state.json");
    out << state_to_json(ss).dump(2) << "\n";
  }
  try {
    const CubicReduction red = build_cubic_reduction(ctx.config, ctx.det);
    const auto roots = solve_cubic(red, max_drive(ctx.config));
    std::ofstream out(ctx.out_dir / "cubic_roots.csv");
    out << "x,tag\n";
    for (const auto& root : roots)
      out << fmt(root.x) << ","
          << (root.tag == BranchStability::unstable ? "unstable"
                                                    : "candidate_stable")
          << "\n";
  } catch (const ConfigError&) {
    // cubic reduction only exists for the symmetric N=6 chain
  }
  ctx.write_manifest();
  return 0;
}

void write_branch_csv(const fs::path& path, const SweepBranch& branch) {
  std::ofstream out(path);
  out << "control_value,x,r2,r4,stable,jump_flag\n";
  for (const auto& p : branch.points) {
    out << fmt(p.control) << "," << fmt(p.x);
    for (int j = 0; j < 2; ++j)
      out << ","
          << (j < static_cast<int>(p.r.size()) ? fmt(p.r[j]) : std::string("nan"));
    out << "," << (p.stable ? 1 : 0) << "," << (p.jump ? 1 : 0) << "\n";
  }
}

int cmd_sweep(RunContext& ctx, const std::string& control, double from,
              double to, int steps, const std::string& direction) {
  ctx.prepare();
  if (steps < 2) throw ConfigError("sweep: --steps must be >= 2");
  const SweepControl ctl =
      control == "power" ? SweepControl::power : SweepControl::rabi;
  const SweepDirection dir = direction == "forward"  ? SweepDirection::forward
                             : direction == "backward" ? SweepDirection::backward
                                                       : SweepDirection::both;
  const SweepResult result =
      hysteresis_sweep(ctx.config, ctx.det, ctl, from, to, steps, dir);

  json summary;
  for (const auto& branch : result.branches) {
    const bool fwd = branch.direction == SweepDirection::forward;
    write_branch_csv(ctx.out_dir / (fwd ? "forward.csv" : "backward.csv"),
                     branch);
    json jumps = json::array();
    for (int j : branch.jumps)
      jumps.push_back({{"index", j}, {"control", branch.points[j].control}});
    summary[fwd ? "forward_jumps" : "backward_jumps"] = jumps;
  }
  if (result.branches.size() == 2) {
    std::ofstream out(ctx.out_dir / "hysteresis_summary.json");
    out << summary.dump(2) << "\n";
  }

  // Reduced-model eigenvalues along the forward traversal: the exact
  // (cosh-bond) particle-conserving matrix at each point's squeezing.
  {
    std::ofstream out(ctx.out_dir / "eigenvalues_vs_control.csv");
    out << "control_value,index,eigenvalue\n";
    for (const auto& p : result.branches.front().points) {
      ChainConfig c = ctx.config;
      c.drive_amp.setConstant(p.rabi);
      SqueezeSet sq;
      try {
        sq = squeeze_params(c, ctx.det, p.state);
      } catch (const InstabilityBoundaryError&) {
        continue;
      }
      ReducedOptions opts;
      opts.mode = ReductionMode::exact;
      const Spectrum spec =
          spectrum(reduced_hamiltonian(c, ctx.det, sq, opts));
      for (long i = 0; i < spec.eigenvalues.size(); ++i)
        out << fmt(p.control) << "," << i << "," << fmt(spec.eigenvalues(i))
            << "\n";
    }
  }
  ctx.write_manifest();
  return 0;
}

struct TopologyRow {
  double r;
  Spectrum reduced;
  Spectrum effective;
  SSHModel model;
  int winding;
};

TopologyRow topology_at(const ChainConfig& config, const Detunings& det,
                        const SqueezeSet& sq, bool force) {
  TopologyRow row;
  row.r = sq.mean_r();
  ReducedOptions ropts;
  ropts.force = force;
  row.reduced = spectrum(reduced_hamiltonian(config, det, sq, ropts));
  EffectiveOptions eopts;
  eopts.check_edges = false;  // edge detunings are fixed per config, not per r
  row.model = effective_ssh(config, det, sq, eopts);
  row.effective = spectrum(finite_ssh_matrix(row.model));
  try {
    row.winding = winding_number(bloch_h(row.model, 256));
  } catch (const TopologyError&) {
    row.winding = -1;  // undefined at the transition point
  }
  return row;
}

int cmd_topology(RunContext& ctx, const std::string& branch, bool force,
                 double r_from, double r_to, int r_steps) {
  ctx.prepare();
  const SteadyState ss = solve_operating_point(ctx.config, ctx.det, branch);
  const SqueezeSet sq = squeeze_params(ctx.config, ctx.det, ss);

  std::vector<TopologyRow> rows;
  if (r_steps > 0) {
    // Synthetic r-sweep at fixed xi (taken from the operating point, or the
    // driven-site detuning when undriven).
    const double xi = sq.sites.empty()
                          ? ctx.det.a(2)
                          : sq.sites.front().xi;
    for (int j = 0; j < r_steps; ++j) {
      const double r =
          r_steps == 1 ? r_from
                       : r_from + (r_to - r_from) * j / (r_steps - 1.0);
      SqueezeSet synth;
      for (int site : ctx.config.driven_sites())
        synth.sites.push_back(squeeze_from_r(site, r, xi));
      rows.push_back(topology_at(ctx.config, ctx.det, synth, force));
    }
  } else {
    rows.push_back(topology_at(ctx.config, ctx.det, sq, force));
  }

  const TopologyRow& op = rows.front();
  {
    json m = {{"v", op.model.v},
              {"w", op.model.w},
              {"delta_r", op.model.delta_r},
              {"r", op.model.r},
              {"lambda_bar", op.model.lambda_bar},
              {"winding", op.winding},
              {"dispersive_warning", op.model.dispersive_warning}};
    std::ofstream out(ctx.out_dir / "ssh_model.json");
    out << m.dump(2) << "\n";
  }
  {
    std::ofstream out(ctx.out_dir / "spectrum.csv");
    out << "r,kind,index,eigenvalue\n";
    for (const auto& row : rows) {
      for (long i = 0; i < row.reduced.eigenvalues.size(); ++i)
        out << fmt(row.r) << ",reduced," << i << ","
            << fmt(row.reduced.eigenvalues(i)) << "\n";
      for (long i = 0; i < row.effective.eigenvalues.size(); ++i)
        out << fmt(row.r) << ",effective," << i << ","
            << fmt(row.effective.eigenvalues(i)) << "\n";
    }
  }
  {
    // Zero-mode (or central-pair) profiles of the effective chain at the
    // operating point, on the 13-point axis.
    std::vector<int> modes;
    try {
      modes = zero_modes(op.effective, op.model, op.model.delta_r);
    } catch (const TopologyError&) {
    }
    if (modes.size() != 2) {
      const long n = op.effective.eigenvalues.size();
      modes = {static_cast<int>(n / 2 - 1), static_cast<int>(n / 2)};
    }
    Eigen::MatrixXcd vecs(op.effective.eigenvectors.rows(), 2);
    vecs.col(0) = op.effective.eigenvectors.col(modes[0]);
    vecs.col(1) = op.effective.eigenvectors.col(modes[1]);
    const EdgeProfile profile = edge_profile(vecs, ProfileMapping::ssh_only);
    std::ofstream out(ctx.out_dir / "edge_profile.csv");
    out << "s_position,psi_sq_state1,psi_sq_state2\n";
    for (long j = 0; j < profile.positions.size(); ++j)
      out << fmt(profile.positions(j)) << "," << fmt(profile.weights(j, 0))
          << "," << fmt(profile.weights(j, 1)) << "\n";
  }
  ctx.write_manifest();
  return 0;
}

int cmd_transmission(RunContext& ctx, const std::string& branch, double dp_from,
                     double dp_to, int dp_steps) {
  ctx.prepare();
  if (dp_steps < 2) throw ConfigError("transmission: --dp-steps must be >= 2");
  if (!(dp_to > dp_from))
    throw ConfigError("transmission: need --dp-to > --dp-from");
  const SteadyState ss = solve_operating_point(ctx.config, ctx.det, branch);

  ProbeConfig probe;
  probe.delta_p_grid =
      Eigen::VectorXd::LinSpaced(dp_steps, dp_from, dp_to);
  probe.gamma_probe = ctx.config.gamma_b(1);
  TransmissionSpectrum spec = transmission(ctx.config, ctx.det, ss, probe);
  spec.peaks = peak_find(spec);

  {
    std::ofstream out(ctx.out_dir / "transmission.csv");
    out << "delta_p,re_t,im_t,abs_t\n";
    for (long j = 0; j < spec.delta_p.size(); ++j)
      out << fmt(spec.delta_p(j)) << "," << fmt(spec.t(j).real()) << ","
          << fmt(spec.t(j).imag()) << "," << fmt(std::abs(spec.t(j))) << "\n";
  }
  {
    json peaks = json::array();
    for (const auto& p : spec.peaks)
      peaks.push_back({{"delta_p", p.delta_p}, {"abs_t", p.abs_t}});
    std::ofstream out(ctx.out_dir / "peaks.json");
    out << peaks.dump(2) << "\n";
  }
  ctx.write_manifest();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Driven Kerr-bosonic chain: steady states, hysteresis, SSH "
               "topology, and probe transmission"};
  app.require_subcommand(1);

  RunContext ctx;
  std::string branch = "low";
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("config", ctx.config_path, "JSON config file")->required();
    sub->add_option("-o,--out", ctx.out_dir, "output directory")
        ->default_val(".");
    sub->add_option("--set", ctx.overrides,
                    "override config values (key=value, last wins)");
    sub->add_option("--seed-branch", branch,
                    "cubic branch to seed from (low|high)")
        ->check(CLI::IsMember({"low", "high"}));
  };

  auto* steady = app.add_subcommand("steady", "solve one steady state");
  add_common(steady);

  auto* sweep = app.add_subcommand("sweep", "hysteresis continuation");
  add_common(sweep);
  std::string control = "rabi", direction = "both";
  double from = 0.0, to = 1.0;
  int steps = 0;
  sweep->add_option("--control", control)->check(CLI::IsMember({"rabi", "power"}));
  sweep->add_option("--from", from)->required();
  sweep->add_option("--to", to)->required();
  sweep->add_option("--steps", steps)->required();
  sweep->add_option("--direction", direction)
      ->check(CLI::IsMember({"forward", "backward", "both"}));

  auto* topo = app.add_subcommand("topology", "SSH extraction and invariants");
  add_common(topo);
  bool force = false;
  double r_from = 0.0, r_to = 0.0;
  int r_steps = 0;
  topo->add_flag("--force", force, "bypass the rwa validity refusal");
  topo->add_option("--r-from", r_from);
  topo->add_option("--r-to", r_to);
  topo->add_option("--r-steps", r_steps, "synthetic squeezing sweep");

  auto* trans = app.add_subcommand("transmission", "probe spectroscopy");
  add_common(trans);
  double dp_from = 0.0, dp_to = 0.0;
  int dp_steps = 0;
  trans->add_option("--dp-from", dp_from)->required();
  trans->add_option("--dp-to", dp_to)->required();
  trans->add_option("--dp-steps", dp_steps)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (steady->parsed()) {
      ctx.command = "steady";
      return cmd_steady(ctx, branch);
    }
    if (sweep->parsed()) {
      ctx.command = "sweep";
      return cmd_sweep(ctx, control, from, to, steps, direction);
    }
    if (topo->parsed()) {
      ctx.command = "topology";
      return cmd_topology(ctx, branch, force, r_from, r_to, r_steps);
    }
    ctx.command = "transmission";
    return cmd_transmission(ctx, branch, dp_from, dp_to, dp_steps);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
