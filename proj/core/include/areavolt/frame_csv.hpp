#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "areavolt/frame.hpp"
#include "areavolt/topology.hpp"

namespace areavolt {

/// Column binding of a frame CSV file.
///
/// Columns are `t_us`, then `V:<bus>:mag,V:<bus>:ang` per boundary bus and
/// `I:<line>:mag,I:<line>:ang` per corridor line (per unit, degrees). Columns
/// for intra-area ties are accepted and carried along. A measurement whose
/// magnitude and angle fields are both empty is absent from the frame; for a
/// corridor line that means the line is out of service.
class FrameCsvLayout {
 public:
  /// Binds a header line to `topo`. Throws Error(TopologyMismatch) for unknown,
  /// duplicate or missing columns.
  static FrameCsvLayout bind(std::string_view header, const CorridorTopology& topo);

  /// Gen buses, load buses, then corridor lines, in topology order.
  static FrameCsvLayout canonical(const CorridorTopology& topo);

  std::string header() const;
  std::size_t column_count() const noexcept { return columns_.size(); }

  /// Parses one data row. `line_number` is used in diagnostics; a row whose
  /// timestamp does not exceed `previous_us` raises NonMonotoneTimestamp.
  /// Throws MalformedRowError on field-count or number errors.
  SynchroFrame parse_row(std::string_view row, std::size_t line_number,
                         std::optional<std::int64_t> previous_us = std::nullopt) const;

  std::string format_row(const SynchroFrame& frame) const;

 private:
  enum class Kind { Time, Voltage, Current };
  enum class Part { Magnitude, Angle };
  struct Column {
    Kind kind = Kind::Time;
    std::string id;
    Part part = Part::Magnitude;
  };

  std::vector<Column> columns_;
};

/// Single-row convenience: binds the canonical layout of `topo`.
SynchroFrame parse_frame_csv(std::string_view row, const CorridorTopology& topo);

}  // namespace areavolt
