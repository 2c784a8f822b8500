#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "areavolt/margin.hpp"
#include "areavolt/reduction.hpp"
#include "areavolt/topology.hpp"

namespace areavolt {

inline constexpr std::string_view kReportHeader = "t_us,index_apparent_pct,index_impedance_pct,voltage_ratio,alarm";

/// Process exit codes of the streaming monitor.
enum class MonitorStatus : int { Ok = 0, Fatal = 1, Alarm = 2 };

struct MonitorConfig {
  std::filesystem::path topology_path;
  std::string input = "-";           // file path, or "-" for stdin
  std::string admittance = "estimate";  // "estimate" or a line-parameter file
  IndexKind chosen_index = IndexKind::ApparentPower;
  double threshold_pct = 80.0;
  std::string output = "-";          // file path, or "-" for stdout

  /// Throws Error(InvalidArgument) for a threshold outside (0, 200] and
  /// Error(IoError) for unreadable inputs.
  void validate() const;
};

/// `t_us,index_apparent_pct,index_impedance_pct,voltage_ratio,alarm`, with
/// unavailable indices left empty.
std::string format_report_row(const MarginReport& report);

/// Row for a frame that could not be reduced: timestamp, empty indices,
/// alarm false.
std::string format_diagnostic_row(std::int64_t timestamp_us);

/// Streams frame CSV from `in` through validate -> reduce -> evaluate and
/// writes one report row per frame to `out`. Per-frame failures produce a
/// diagnostic row and a message on `log`. Header mismatch, malformed rows and
/// non-increasing timestamps are fatal.
MonitorStatus stream_monitor(const CorridorTopology& topo, const AdmittanceSource& admittances,
                             const MarginConfig& margin, std::istream& in, std::ostream& out, std::ostream& log);

/// File-level entry point used by the CLI.
MonitorStatus stream_monitor(const MonitorConfig& config, std::ostream& log);

}  // namespace areavolt
