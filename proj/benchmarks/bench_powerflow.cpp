#include <benchmark/benchmark.h>

#include "areavolt/harness.hpp"
#include "areavolt/powerflow.hpp"

namespace {

using namespace areavolt;

void BM_SolvePowerFlowFourBus(benchmark::State& state) {
  const auto net = default_sweep_network();
  for (auto _ : state) {
    auto sol = solve_power_flow(net);
    benchmark::DoNotOptimize(sol.max_mismatch);
  }
}
BENCHMARK(BM_SolvePowerFlowFourBus);

void BM_MaxLoadabilityFourBus(benchmark::State& state) {
  const auto net = default_sweep_network();
  const auto direction = proportional_direction(net);
  for (auto _ : state) {
    auto result = max_loadability(net, direction, true);
    benchmark::DoNotOptimize(result.lambda_max);
  }
}
BENCHMARK(BM_MaxLoadabilityFourBus)->Unit(benchmark::kMillisecond);

void BM_TwoBusMaxPower(benchmark::State& state) {
  for (auto _ : state) {
    auto s = two_bus_max_power({1.0, 0.0}, {15.2, -76.3}, 0.54);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_TwoBusMaxPower)->Unit(benchmark::kMicrosecond);

void BM_ErrorSweepDefault(benchmark::State& state) {
  const auto net = default_sweep_network();
  const auto topo = two_corridor_topology();
  const auto splits = default_sweep_splits();
  SweepOptions options;
  options.parallel = state.range(0) != 0;
  for (auto _ : state) {
    auto rows = error_sweep(net, topo, splits, options);
    benchmark::DoNotOptimize(rows.data());
  }
}
BENCHMARK(BM_ErrorSweepDefault)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace
