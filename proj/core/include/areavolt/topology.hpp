#pragma once

#include <string>
#include <vector>

namespace areavolt {

using BusId = std::string;
using LineId = std::string;

/// A series branch between two buses, as written in topology and network files.
struct Line {
  LineId id;
  BusId from;
  BusId to;

  bool operator==(const Line&) const = default;
};

/// A corridor line with its endpoints sorted by side. Currents on corridor
/// lines are always oriented from `gen_bus` to `load_bus`.
struct CorridorLine {
  LineId id;
  BusId gen_bus;
  BusId load_bus;

  bool operator==(const CorridorLine&) const = default;
};

/// Boundary buses and lines of a transmission corridor between a group of
/// generator buses and a group of load buses.
///
/// Intra-area ties (gen-gen or load-load) are kept for bookkeeping only; no
/// reduction formula reads them.
class CorridorTopology {
 public:
  /// Validates and builds a topology. Throws Error with DuplicateId,
  /// DanglingEndpoint, NotACorridorLine or InvalidTopology.
  static CorridorTopology build(std::vector<BusId> gen_buses,
                                std::vector<BusId> load_buses,
                                const std::vector<Line>& corridor_lines,
                                std::vector<Line> intra_area_lines = {});

  const std::vector<BusId>& gen_buses() const noexcept { return gen_buses_; }
  const std::vector<BusId>& load_buses() const noexcept { return load_buses_; }
  const std::vector<CorridorLine>& corridor_lines() const noexcept { return corridor_lines_; }
  const std::vector<Line>& intra_area_lines() const noexcept { return intra_area_lines_; }

  bool is_gen_bus(const BusId& bus) const noexcept;
  bool is_load_bus(const BusId& bus) const noexcept;
  bool is_boundary_bus(const BusId& bus) const noexcept { return is_gen_bus(bus) || is_load_bus(bus); }

  /// Corridor line by id, or nullptr.
  const CorridorLine* find_corridor_line(const LineId& id) const noexcept;

  bool operator==(const CorridorTopology&) const = default;

 private:
  CorridorTopology() = default;

  std::vector<BusId> gen_buses_;
  std::vector<BusId> load_buses_;
  std::vector<CorridorLine> corridor_lines_;
  std::vector<Line> intra_area_lines_;
};

}  // namespace areavolt
