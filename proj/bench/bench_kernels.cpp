// Serial reference vs OpenMP kernels. Run with OMP_NUM_THREADS set to
// compare scaling; both variants produce identical output.

#include <benchmark/benchmark.h>

#include "rfp/comparison.hpp"
#include "rfp/geometry.hpp"
#include "rfp/gridsim.hpp"

namespace {

const rfp::Deployment kDep = rfp::scenario_deployments(rfp::ScenarioId::S1).first;

void BM_FieldSerial(benchmark::State& state) {
  const auto lattice = rfp::generate_sites(rfp::LayoutKind::Hexagonal, kDep.d_max, 2);
  const auto region = rfp::default_region(rfp::LayoutKind::Hexagonal, kDep.d_max);
  const double res = static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(rfp::compute_field_serial(lattice, kDep, res, region));
  }
}

void BM_FieldParallel(benchmark::State& state) {
  const auto lattice = rfp::generate_sites(rfp::LayoutKind::Hexagonal, kDep.d_max, 2);
  const auto region = rfp::default_region(rfp::LayoutKind::Hexagonal, kDep.d_max);
  const double res = static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(rfp::compute_field(lattice, kDep, res, region));
  }
}

void BM_AlphaSerial(benchmark::State& state) {
  const auto lattice = rfp::generate_sites(rfp::LayoutKind::Hexagonal, kDep.d_max, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rfp::empirical_alpha_serial(lattice, 2.0));
  }
}

void BM_AlphaParallel(benchmark::State& state) {
  const auto lattice = rfp::generate_sites(rfp::LayoutKind::Hexagonal, kDep.d_max, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rfp::empirical_alpha(lattice, 2.0));
  }
}

void BM_MonteCarloSerial(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(rfp::estimate_alpha_monte_carlo_serial(
        rfp::LayoutKind::Hexagonal, static_cast<std::uint64_t>(state.range(0)), 7));
  }
}

void BM_MonteCarloParallel(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(rfp::estimate_alpha_monte_carlo(
        rfp::LayoutKind::Hexagonal, static_cast<std::uint64_t>(state.range(0)), 7));
  }
}

}  // namespace

BENCHMARK(BM_FieldSerial)->Arg(10)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FieldParallel)->Arg(10)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AlphaSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AlphaParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MonteCarloSerial)->Arg(1 << 20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MonteCarloParallel)->Arg(1 << 20)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
