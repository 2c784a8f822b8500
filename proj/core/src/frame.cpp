#include "areavolt/frame.hpp"

#include "areavolt/error.hpp"

namespace areavolt {

SynchroFrame validate_frame(const SynchroFrame& frame, const CorridorTopology& topo, LineCoverage coverage) {
  for (const auto* side : {&topo.gen_buses(), &topo.load_buses()}) {
    for (const auto& bus : *side) {
      if (!frame.bus_voltages.contains(bus)) throw Error(Errc::MissingMeasurement, "V(" + bus + ")");
    }
  }
  std::size_t in_service = 0;
  for (const auto& line : topo.corridor_lines()) {
    if (frame.line_currents.contains(line.id)) {
      ++in_service;
    } else if (coverage == LineCoverage::Required) {
      throw Error(Errc::MissingMeasurement, "I(" + line.id + ")");
    }
  }
  if (in_service == 0) throw Error(Errc::MissingMeasurement, "no corridor line currents");

  for (const auto& [bus, v] : frame.bus_voltages) {
    if (!is_finite(v)) throw Error(Errc::NonFiniteValue, "V(" + bus + ")");
  }
  for (const auto& [line, i] : frame.line_currents) {
    if (!is_finite(i)) throw Error(Errc::NonFiniteValue, "I(" + line + ")");
  }
  return frame;
}

}  // namespace areavolt
