#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "areavolt/frame.hpp"
#include "areavolt/powerflow.hpp"

namespace areavolt {

/// Builds the synchrophasor frame a set of PMUs would report for a solved
/// network: every boundary bus voltage, every corridor line current oriented
/// gen -> load, and intra-area tie currents where the network has the line.
/// Throws Error(TopologyMismatch) if the network lacks a topology bus or line.
SynchroFrame frame_from_solution(const PfNetwork& net, const PfSolution& solution, const CorridorTopology& topo,
                                 std::int64_t timestamp_us);

struct FrameGenOptions {
  std::int64_t start_us = 0;
  bool pf_constant = true;
  double noise_std = 0.0;  // pu, added independently to real and imaginary parts
  std::uint64_t seed = 1;
};

struct FrameStream {
  std::vector<SynchroFrame> frames;
  /// Set when a trajectory point failed to solve; `frames` stops before it.
  std::optional<std::string> diagnostic;
};

/// One frame per load scaling in `trajectory`, timestamps spaced by
/// `frame_interval_us`. Each point is warm-started from the previous one.
FrameStream generate_frames(const PfNetwork& net, const CorridorTopology& topo, const LoadDirection& direction,
                            std::span<const double> trajectory, std::int64_t frame_interval_us,
                            const FrameGenOptions& options = {});

}  // namespace areavolt
