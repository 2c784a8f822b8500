#include "areavolt/synth.hpp"

#include <random>

#include "areavolt/error.hpp"

namespace areavolt {

SynchroFrame frame_from_solution(const PfNetwork& net, const PfSolution& solution, const CorridorTopology& topo,
                                 std::int64_t timestamp_us) {
  SynchroFrame frame;
  frame.timestamp_us = timestamp_us;
  for (const auto* side : {&topo.gen_buses(), &topo.load_buses()}) {
    for (const auto& bus : *side) {
      auto it = solution.bus_voltages.find(bus);
      if (it == solution.bus_voltages.end()) throw Error(Errc::TopologyMismatch, "network has no bus '" + bus + "'");
      frame.bus_voltages.emplace(bus, it->second);
    }
  }

  auto oriented_current = [&](const LineId& id, const BusId& from) -> std::optional<Phasor> {
    const PfLine* line = net.find_line(id);
    if (!line) return std::nullopt;
    const Phasor current = solution.line_currents.at(id);
    return line->from == from ? current : -current;
  };

  for (const auto& line : topo.corridor_lines()) {
    const PfLine* pf_line = net.find_line(line.id);
    if (!pf_line) throw Error(Errc::TopologyMismatch, "network has no line '" + line.id + "'");
    const bool same_ends = (pf_line->from == line.gen_bus && pf_line->to == line.load_bus) ||
                           (pf_line->from == line.load_bus && pf_line->to == line.gen_bus);
    if (!same_ends) throw Error(Errc::TopologyMismatch, "line '" + line.id + "' endpoints differ from the network");
    frame.line_currents.emplace(line.id, *oriented_current(line.id, line.gen_bus));
  }
  for (const auto& tie : topo.intra_area_lines()) {
    if (auto current = oriented_current(tie.id, tie.from)) frame.line_currents.emplace(tie.id, *current);
  }
  return frame;
}

FrameStream generate_frames(const PfNetwork& net, const CorridorTopology& topo, const LoadDirection& direction,
                            std::span<const double> trajectory, std::int64_t frame_interval_us,
                            const FrameGenOptions& options) {
  if (frame_interval_us <= 0) throw Error(Errc::InvalidArgument, "frame interval must be positive");
  if (options.noise_std < 0.0) throw Error(Errc::InvalidArgument, "negative noise standard deviation");

  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> noise(0.0, options.noise_std);
  auto perturb = [&](Phasor value) {
    if (options.noise_std == 0.0) return value;
    const double re = noise(rng);
    const double im = noise(rng);
    return value + Phasor(re, im);
  };

  FrameStream stream;
  std::optional<PfSolution> previous;
  for (std::size_t k = 0; k < trajectory.size(); ++k) {
    const PfNetwork loaded = scale_loads(net, direction, trajectory[k], options.pf_constant);
    PfSolution solution;
    try {
      solution = solve_power_flow(loaded, previous ? &previous->bus_voltages : nullptr);
    } catch (const Error& e) {
      stream.diagnostic = "trajectory point " + std::to_string(k) + " (lambda=" + std::to_string(trajectory[k]) +
                          "): " + e.what();
      break;
    }
    SynchroFrame frame = frame_from_solution(loaded, solution, topo,
                                             options.start_us + static_cast<std::int64_t>(k) * frame_interval_us);
    for (auto& [bus, v] : frame.bus_voltages) v = perturb(v);
    for (auto& [line, i] : frame.line_currents) i = perturb(i);
    stream.frames.push_back(std::move(frame));
    previous = std::move(solution);
  }
  return stream;
}

}  // namespace areavolt
