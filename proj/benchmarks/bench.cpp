#include <benchmark/benchmark.h>

#include "kerrssh/cubic.hpp"
#include "kerrssh/ssh.hpp"
#include "kerrssh/steady_state.hpp"
#include "kerrssh/topology.hpp"
#include "kerrssh/transmission.hpp"

namespace {

using namespace kerrssh;

ChainConfig bench_config() {
  ChainConfig c = make_uniform_chain(6, 100.0, 113.0, -1.0, 1.0, 0.01, 0.01);
  c.drive_amp.setConstant(2.0);
  return c;
}

void BM_MeanFieldRhs(benchmark::State& state) {
  const ChainConfig c = bench_config();
  const Detunings det = detunings_of(c);
  const CubicReduction red = build_cubic_reduction(c, det);
  const Eigen::VectorXcd z =
      symmetric_seed(c, det, solve_cubic(red, 2.0).front().x, 2.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(mean_field_rhs(c, det, z));
}
BENCHMARK(BM_MeanFieldRhs);

void BM_NewtonRefine(benchmark::State& state) {
  const ChainConfig c = bench_config();
  const Detunings det = detunings_of(c);
  const CubicReduction red = build_cubic_reduction(c, det);
  const Eigen::VectorXcd z =
      symmetric_seed(c, det, solve_cubic(red, 2.0).front().x, 2.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(newton_refine(c, det, z));
}
BENCHMARK(BM_NewtonRefine);

void BM_TransmissionPoint(benchmark::State& state) {
  const ChainConfig c = bench_config();
  const Detunings det = detunings_of(c);
  const CubicReduction red = build_cubic_reduction(c, det);
  const SteadyState ss = newton_refine(
      c, det, symmetric_seed(c, det, solve_cubic(red, 2.0).front().x, 2.0));
  ProbeConfig probe;
  probe.delta_p_grid = Eigen::VectorXd::LinSpaced(2, 99.0, 101.0);
  probe.gamma_probe = 0.01;
  for (auto _ : state)
    benchmark::DoNotOptimize(transmission(c, det, ss, probe));
}
BENCHMARK(BM_TransmissionPoint);

void BM_WindingNumber(benchmark::State& state) {
  const SSHModel m = ssh_from_couplings(1.0, 1.5, 0.0, 3);
  const BlochSample s = bloch_h(m, 1024);
  for (auto _ : state)
    benchmark::DoNotOptimize(winding_number(s));
}
BENCHMARK(BM_WindingNumber);

}  // namespace

BENCHMARK_MAIN();
