// Serial reference vs OpenMP ensemble kernels. Thread count for the parallel
// runs is the benchmark argument (0 = OpenMP default).

#include <benchmark/benchmark.h>

#include "qkr/csim.hpp"
#include "qkr/qsim.hpp"

namespace {

const double kOmegaR = qkr::CaesiumConstants{}.recoil_frequency();

qkr::qsim::SimConfig quantum_config() {
  qkr::qsim::SimConfig c;
  c.scaled = qkr::make_scaled(5.0, 20e-6, 520e-9, kOmegaR, 0.0125);
  c.kicks = 30;
  c.trajectories = 64;
  c.n_max = 128;
  c.substeps = 16;
  return c;
}

qkr::csim::ClassicalConfig classical_config() {
  qkr::csim::ClassicalConfig c;
  c.phi_d = 5.0;
  c.recoil_frequency = kOmegaR;
  c.period = 20e-6;
  c.kicks = 30;
  c.count = 100000;
  return c;
}

void BM_QuantumSerial(benchmark::State& state) {
  const auto c = quantum_config();
  for (auto _ : state) benchmark::DoNotOptimize(qkr::qsim::run_ensemble_serial(c));
  state.SetItemsProcessed(state.iterations() * c.trajectories);
}

void BM_QuantumParallel(benchmark::State& state) {
  const auto c = quantum_config();
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(qkr::qsim::run_ensemble(c, threads));
  state.SetItemsProcessed(state.iterations() * c.trajectories);
}

void BM_ClassicalSerial(benchmark::State& state) {
  const auto c = classical_config();
  for (auto _ : state) benchmark::DoNotOptimize(qkr::csim::run_classical_ensemble_serial(c));
  state.SetItemsProcessed(state.iterations() * c.count);
}

void BM_ClassicalParallel(benchmark::State& state) {
  const auto c = classical_config();
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(qkr::csim::run_classical_ensemble(c, threads));
  state.SetItemsProcessed(state.iterations() * c.count);
}

}  // namespace

BENCHMARK(BM_QuantumSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_QuantumParallel)->Arg(0)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ClassicalSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ClassicalParallel)->Arg(0)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
