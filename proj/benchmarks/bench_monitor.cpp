#include <benchmark/benchmark.h>

#include <sstream>
#include <vector>

#include "areavolt/frame_csv.hpp"
#include "areavolt/harness.hpp"
#include "areavolt/margin.hpp"
#include "areavolt/monitor.hpp"
#include "areavolt/reduction.hpp"
#include "areavolt/synth.hpp"

namespace {

using namespace areavolt;

std::vector<SynchroFrame> ramp_frames(std::size_t count) {
  const auto net = default_sweep_network();
  const auto topo = two_corridor_topology();
  const auto direction = proportional_direction(net);
  const double lambda_max = max_loadability(net, direction, true).lambda_max;
  std::vector<double> trajectory(count);
  for (std::size_t k = 0; k < count; ++k) trajectory[k] = lambda_max * (0.1 + 0.85 * k / (count - 1.0));
  return generate_frames(net, topo, direction, trajectory, 20000).frames;
}

void BM_ReduceAndEvaluate(benchmark::State& state) {
  const auto topo = two_corridor_topology();
  const auto frames = ramp_frames(64);
  std::size_t k = 0;
  for (auto _ : state) {
    const auto report = evaluate(reduce_frame(frames[k++ % frames.size()], topo));
    benchmark::DoNotOptimize(report.alarm);
  }
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations()));
}
BENCHMARK(BM_ReduceAndEvaluate);

void BM_StreamMonitorCsv(benchmark::State& state) {
  const auto topo = two_corridor_topology();
  const auto frames = ramp_frames(static_cast<std::size_t>(state.range(0)));
  const auto layout = FrameCsvLayout::canonical(topo);
  std::string csv = layout.header() + "\n";
  for (const auto& frame : frames) csv += layout.format_row(frame) + "\n";

  for (auto _ : state) {
    std::istringstream in(csv);
    std::ostringstream out;
    std::ostringstream log;
    auto status = stream_monitor(topo, EstimateFromFrame{}, MarginConfig{}, in, out, log);
    benchmark::DoNotOptimize(status);
  }
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_StreamMonitorCsv)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace
