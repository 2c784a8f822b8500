#pragma once

#include <cstdint>
#include <map>

#include "areavolt/phasor.hpp"
#include "areavolt/topology.hpp"

namespace areavolt {

/// One timestamped synchrophasor snapshot of the corridor boundary.
///
/// Line currents are oriented from the generator-side endpoint to the
/// load-side endpoint. A corridor line with no current entry is out of
/// service for this frame.
struct SynchroFrame {
  std::int64_t timestamp_us = 0;
  std::map<BusId, Phasor> bus_voltages;
  std::map<LineId, Phasor> line_currents;

  bool operator==(const SynchroFrame&) const = default;
};

enum class LineCoverage {
  /// Every corridor line must carry a current measurement.
  Required,
  /// Missing corridor-line currents mean the line is out of service.
  AllowOutOfService,
};

/// Checks coverage and finiteness against `topo` and returns the frame
/// unchanged. Throws Error with MissingMeasurement or NonFiniteValue.
SynchroFrame validate_frame(const SynchroFrame& frame, const CorridorTopology& topo,
                            LineCoverage coverage = LineCoverage::Required);

}  // namespace areavolt
