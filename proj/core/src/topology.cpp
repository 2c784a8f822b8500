#include "areavolt/topology.hpp"

#include <algorithm>
#include <set>

#include "areavolt/error.hpp"

namespace areavolt {

namespace {

bool contains(const std::vector<BusId>& buses, const BusId& bus) {
  return std::find(buses.begin(), buses.end(), bus) != buses.end();
}

}  // namespace

CorridorTopology CorridorTopology::build(std::vector<BusId> gen_buses,
                                         std::vector<BusId> load_buses,
                                         const std::vector<Line>& corridor_lines,
                                         std::vector<Line> intra_area_lines) {
  if (gen_buses.empty()) throw Error(Errc::InvalidTopology, "no generator buses");
  if (load_buses.empty()) throw Error(Errc::InvalidTopology, "no load buses");
  if (corridor_lines.empty()) throw Error(Errc::InvalidTopology, "no corridor lines");

  std::set<BusId> bus_ids;
  for (const auto* side : {&gen_buses, &load_buses}) {
    for (const auto& bus : *side) {
      if (bus.empty()) throw Error(Errc::InvalidTopology, "empty bus id");
      if (!bus_ids.insert(bus).second) throw Error(Errc::DuplicateId, "bus '" + bus + "'");
    }
  }

  std::set<LineId> line_ids;
  auto register_line = [&](const Line& line) {
    if (line.id.empty()) throw Error(Errc::InvalidTopology, "empty line id");
    if (!line_ids.insert(line.id).second) throw Error(Errc::DuplicateId, "line '" + line.id + "'");
    for (const auto& end : {line.from, line.to}) {
      if (!bus_ids.contains(end)) {
        throw Error(Errc::DanglingEndpoint, "line '" + line.id + "' endpoint '" + end + "'");
      }
    }
    if (line.from == line.to) {
      throw Error(Errc::InvalidTopology, "line '" + line.id + "' is a self loop");
    }
  };

  CorridorTopology topo;
  for (const auto& line : corridor_lines) {
    register_line(line);
    const bool from_gen = contains(gen_buses, line.from);
    const bool to_gen = contains(gen_buses, line.to);
    if (from_gen == to_gen) {
      throw Error(Errc::NotACorridorLine,
                  "line '" + line.id + "' (" + line.from + "-" + line.to + ") does not span generator to load");
    }
    if (from_gen) {
      topo.corridor_lines_.push_back({line.id, line.from, line.to});
    } else {
      topo.corridor_lines_.push_back({line.id, line.to, line.from});
    }
  }
  for (const auto& line : intra_area_lines) {
    register_line(line);
    if (contains(gen_buses, line.from) != contains(gen_buses, line.to)) {
      throw Error(Errc::InvalidTopology,
                  "intra-area line '" + line.id + "' spans generator to load; list it as a corridor line");
    }
  }

  topo.gen_buses_ = std::move(gen_buses);
  topo.load_buses_ = std::move(load_buses);
  topo.intra_area_lines_ = std::move(intra_area_lines);
  return topo;
}

bool CorridorTopology::is_gen_bus(const BusId& bus) const noexcept { return contains(gen_buses_, bus); }

bool CorridorTopology::is_load_bus(const BusId& bus) const noexcept { return contains(load_buses_, bus); }

const CorridorLine* CorridorTopology::find_corridor_line(const LineId& id) const noexcept {
  auto it = std::find_if(corridor_lines_.begin(), corridor_lines_.end(),
                         [&](const CorridorLine& line) { return line.id == id; });
  return it == corridor_lines_.end() ? nullptr : &*it;
}

}  // namespace areavolt
