#include "areavolt/monitor.hpp"

#include <fstream>
#include <iostream>
#include <optional>

#include "areavolt/csv.hpp"
#include "areavolt/error.hpp"
#include "areavolt/frame_csv.hpp"
#include "areavolt/io.hpp"

namespace areavolt {

void MonitorConfig::validate() const {
  if (!(threshold_pct > 0.0 && threshold_pct <= 200.0)) {
    throw Error(Errc::InvalidArgument, "threshold must be in (0, 200], got " + std::to_string(threshold_pct));
  }
  auto readable = [](const std::filesystem::path& path) {
    std::ifstream probe(path);
    if (!probe) throw Error(Errc::IoError, "cannot read '" + path.string() + "'");
  };
  readable(topology_path);
  if (input != "-") readable(input);
  if (admittance != "estimate") readable(admittance);
}

std::string format_report_row(const MarginReport& report) {
  auto field = [](const std::optional<double>& value) { return value ? format_decimal(*value) : std::string(); };
  return std::to_string(report.timestamp_us) + ',' + field(report.apparent_power_index_pct) + ',' +
         field(report.impedance_match_pct) + ',' + field(report.voltage_ratio) + ',' +
         (report.alarm ? "true" : "false");
}

std::string format_diagnostic_row(std::int64_t timestamp_us) {
  return std::to_string(timestamp_us) + ",,,,false";
}

MonitorStatus stream_monitor(const CorridorTopology& topo, const AdmittanceSource& admittances,
                             const MarginConfig& margin, std::istream& in, std::ostream& out, std::ostream& log) {
  if (const auto* known = std::get_if<LineAdmittanceSet>(&admittances)) {
    for (const auto& corridor : topo.corridor_lines()) {
      if (!known->contains(corridor.id)) {
        log << "fatal: line file has no admittance for corridor line '" << corridor.id << "'\n";
        return MonitorStatus::Fatal;
      }
    }
  }

  std::string line;
  std::size_t line_number = 0;
  std::optional<FrameCsvLayout> layout;
  while (!layout && std::getline(in, line)) {
    ++line_number;
    if (line.empty() || line == "\r") continue;
    try {
      layout = FrameCsvLayout::bind(line, topo);
    } catch (const Error& e) {
      log << "fatal: header: " << e.what() << '\n';
      return MonitorStatus::Fatal;
    }
  }
  if (!layout) {
    log << "fatal: input has no header\n";
    return MonitorStatus::Fatal;
  }

  out << kReportHeader << '\n';
  bool any_alarm = false;
  std::optional<std::int64_t> previous;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty() || line == "\r") continue;
    SynchroFrame frame;
    try {
      frame = layout->parse_row(line, line_number, previous);
    } catch (const Error& e) {
      log << "fatal: " << e.what() << '\n';
      out.flush();
      return MonitorStatus::Fatal;
    }
    previous = frame.timestamp_us;

    try {
      const auto checked = validate_frame(frame, topo, LineCoverage::AllowOutOfService);
      const auto report = evaluate(reduce_frame(checked, topo, admittances), margin);
      any_alarm = any_alarm || report.alarm;
      out << format_report_row(report) << '\n';
    } catch (const Error& e) {
      log << "frame t_us=" << frame.timestamp_us << ": " << e.what() << '\n';
      out << format_diagnostic_row(frame.timestamp_us) << '\n';
    }
  }
  out.flush();
  return any_alarm ? MonitorStatus::Alarm : MonitorStatus::Ok;
}

MonitorStatus stream_monitor(const MonitorConfig& config, std::ostream& log) {
  CorridorTopology topo = [&] {
    config.validate();
    return load_topology(config.topology_path);
  }();
  AdmittanceSource source = EstimateFromFrame{};
  if (config.admittance != "estimate") source = load_line_admittances(config.admittance);
  const MarginConfig margin{config.chosen_index, config.threshold_pct};

  std::ifstream in_file;
  if (config.input != "-") {
    in_file.open(config.input);
    if (!in_file) throw Error(Errc::IoError, "cannot read '" + config.input + "'");
  }
  std::ofstream out_file;
  if (config.output != "-") {
    out_file.open(config.output, std::ios::binary | std::ios::trunc);
    if (!out_file) throw Error(Errc::IoError, "cannot write '" + config.output + "'");
  }
  std::istream& in = config.input == "-" ? std::cin : in_file;
  std::ostream& out = config.output == "-" ? std::cout : out_file;
  return stream_monitor(topo, source, margin, in, out, log);
}

}  // namespace areavolt
