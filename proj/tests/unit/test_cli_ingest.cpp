#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "areavolt/csv.hpp"
#include "areavolt/error.hpp"
#include "areavolt/frame_csv.hpp"
#include "areavolt/harness.hpp"
#include "areavolt/margin.hpp"
#include "areavolt/monitor.hpp"
#include "areavolt/powerflow.hpp"
#include "areavolt/reduction.hpp"
#include "areavolt/synth.hpp"

using namespace areavolt;

namespace {

constexpr std::string_view kHeader =
    "t_us,V:g1:mag,V:g1:ang,V:g2:mag,V:g2:ang,V:l1:mag,V:l1:ang,V:l2:mag,V:l2:ang,"
    "I:g1-l1:mag,I:g1-l1:ang,I:g2-l2:mag,I:g2-l2:ang";
constexpr std::string_view kExampleRow =
    "1000000,1.0,0.0,1.0,0.0,0.53852,-21.801,0.53852,-21.801,10.626,-54.95,31.95,-54.82";

template <typename F>
Errc code_of(F&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return Errc::AssertionFailure;
}

struct MonitorRun {
  MonitorStatus status;
  std::string out;
  std::string log;
};

MonitorRun run(const std::string& input, const AdmittanceSource& source = EstimateFromFrame{},
               MarginConfig margin = {}) {
  std::istringstream in(input);
  std::ostringstream out;
  std::ostringstream log;
  const auto status = stream_monitor(two_corridor_topology(), source, margin, in, out, log);
  return {status, out.str(), log.str()};
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

/// Ramp of the default two-corridor network up to `top`·λ_max.
std::vector<SynchroFrame> ramp_frames(int count, double top) {
  const auto net = default_sweep_network();
  const auto dir = proportional_direction(net);
  const double lambda_max = max_loadability(net, dir, true).lambda_max;
  std::vector<double> traj;
  for (int i = 0; i < count; ++i) traj.push_back((0.05 + (top - 0.05) * i / (count - 1)) * lambda_max);
  auto stream = generate_frames(net, two_corridor_topology(), dir, traj, 20000, {.start_us = 1'700'000'000'000'000});
  REQUIRE(stream.frames.size() == static_cast<std::size_t>(count));
  return std::move(stream.frames);
}

}  // namespace

TEST_SUITE("cli-ingest") {
  TEST_CASE("canonical header") {
    const auto layout = FrameCsvLayout::canonical(two_corridor_topology());
    CHECK(layout.header() == kHeader);
    CHECK(layout.column_count() == 13);
  }

  TEST_CASE("example row parses to the two-corridor frame") {
    const auto f = parse_frame_csv(kExampleRow, two_corridor_topology());
    CHECK(f.timestamp_us == 1'000'000);
    CHECK(std::abs(f.bus_voltages.at("g1") - Phasor(1, 0)) < 1e-15);
    CHECK(std::abs(f.bus_voltages.at("l1") - Phasor(0.5, -0.2)) < 1e-5);
    CHECK(std::abs(f.bus_voltages.at("l2") - Phasor(0.5, -0.2)) < 1e-5);
    CHECK(std::abs(f.line_currents.at("g1-l1") - from_polar_deg(10.626, -54.95)) < 1e-12);
    CHECK(f.line_currents.size() == 2);
  }

  TEST_CASE("row errors") {
    const auto topo = two_corridor_topology();
    const auto layout = FrameCsvLayout::canonical(topo);
    SUBCASE("11 fields") {
      try {
        layout.parse_row("1000000,1.0,0.0,1.0,0.0,0.53852,-21.801,0.53852,-21.801,10.626,-54.95", 2);
        FAIL("expected MalformedRow");
      } catch (const MalformedRowError& e) {
        CHECK(e.code() == Errc::MalformedRow);
        CHECK(e.line() == 2);
      }
    }
    SUBCASE("repeated timestamp") {
      const auto first = layout.parse_row(kExampleRow, 2);
      CHECK(code_of([&] { layout.parse_row(kExampleRow, 3, first.timestamp_us); }) == Errc::NonMonotoneTimestamp);
    }
    SUBCASE("bad numbers") {
      CHECK(code_of([&] { layout.parse_row("10,1.0,0.0,1.0,0.0,x,-21.801,0.53852,-21.801,10.626,-54.95,31.95,-54.82", 2); }) ==
            Errc::MalformedRow);
      CHECK(code_of([&] { layout.parse_row("10,1.0,0.0,1.0,0.0,-0.5,-21.801,0.53852,-21.801,10.626,-54.95,31.95,-54.82", 2); }) ==
            Errc::MalformedRow);
      CHECK(code_of([&] { layout.parse_row("1.5,1.0,0.0,1.0,0.0,0.5,-21.801,0.53852,-21.801,10.626,-54.95,31.95,-54.82", 2); }) ==
            Errc::MalformedRow);
      CHECK(code_of([&] { layout.parse_row("10,1.0,0.0,1.0,0.0,0.5,-21.801,0.53852,-21.801,10.626,,31.95,-54.82", 2); }) ==
            Errc::MalformedRow);
    }
    SUBCASE("empty current marks the line out of service") {
      const auto f = layout.parse_row("10,1.0,0.0,1.0,0.0,0.5,-21.801,0.53852,-21.801,,,31.95,-54.82", 2);
      CHECK_FALSE(f.line_currents.contains("g1-l1"));
    }
    SUBCASE("carriage return") {
      const auto f = layout.parse_row(std::string(kExampleRow) + "\r", 2);
      CHECK(f.line_currents.at("g2-l2") == from_polar_deg(31.95, -54.82));
    }
  }

  TEST_CASE("header binding") {
    const auto topo = two_corridor_topology();
    CHECK(code_of([&] { FrameCsvLayout::bind("t_us,V:g1:mag,V:g1:ang", topo); }) == Errc::TopologyMismatch);
    CHECK(code_of([&] { FrameCsvLayout::bind(std::string(kHeader) + ",V:zz:mag,V:zz:ang", topo); }) ==
          Errc::TopologyMismatch);
    CHECK(code_of([&] { FrameCsvLayout::bind(std::string(kHeader) + ",V:g1:mag", topo); }) == Errc::TopologyMismatch);
    CHECK(code_of([&] { FrameCsvLayout::bind(std::string(kHeader) + ",I:l1-l2:mag", topo); }) ==
          Errc::TopologyMismatch);

    const auto reordered = FrameCsvLayout::bind(
        "I:g2-l2:ang,I:g2-l2:mag,t_us,V:l2:mag,V:l2:ang,V:g1:mag,V:g1:ang,V:g2:mag,V:g2:ang,V:l1:mag,V:l1:ang,"
        "I:g1-l1:mag,I:g1-l1:ang,I:l1-l2:mag,I:l1-l2:ang",
        topo);
    const auto f = reordered.parse_row("-54.82,31.95,5,0.53852,-21.801,1,0,1,0,0.53852,-21.801,10.626,-54.95,0,0", 2);
    CHECK(f.timestamp_us == 5);
    CHECK(f.line_currents.at("g2-l2") == from_polar_deg(31.95, -54.82));
    CHECK(f.line_currents.contains("l1-l2"));
  }

  TEST_CASE("format_row round-trips through parse_row") {
    const auto layout = FrameCsvLayout::canonical(two_corridor_topology());
    for (const auto& f : ramp_frames(10, 0.9)) {
      const auto back = layout.parse_row(layout.format_row(f), 2);
      CHECK(back.timestamp_us == f.timestamp_us);
      for (const auto& [bus, v] : f.bus_voltages) CHECK(std::abs(back.bus_voltages.at(bus) - v) < 1e-10);
      for (const auto& [line, i] : back.line_currents) CHECK(std::abs(f.line_currents.at(line) - i) < 1e-9);
    }
  }

  TEST_CASE("single example frame raises the alarm") {
    const auto r = run(std::string(kHeader) + "\n" + std::string(kExampleRow) + "\n");
    CHECK(r.status == MonitorStatus::Alarm);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 2);
    CHECK(lines[0] == kReportHeader);
    const auto fields = split_fields(lines[1]);
    REQUIRE(fields.size() == 5);
    CHECK(fields[0] == "1000000");
    CHECK(std::stod(std::string(fields[1])) == doctest::Approx(100.0).epsilon(1e-4));
    CHECK(fields[4] == "true");
  }

  TEST_CASE("static line parameters") {
    const auto y = table1_admittances();
    const auto r = run(std::string(kHeader) + "\n" + std::string(kExampleRow) + "\n",
                       LineAdmittanceSet{{"g1-l1", y.g1_l1}, {"g2-l2", y.g2_l2}});
    CHECK(r.status == MonitorStatus::Alarm);
    const auto missing = run(std::string(kHeader) + "\n", LineAdmittanceSet{{"g1-l1", y.g1_l1}});
    CHECK(missing.status == MonitorStatus::Fatal);
  }

  TEST_CASE("no-load frames produce diagnostic rows") {
    std::string input = std::string(kHeader) + "\n";
    for (int t = 1; t <= 3; ++t) input += std::to_string(t) + ",1,0,1,0,1,0,1,0,0,0,0,0\n";
    const auto r = run(input);
    CHECK(r.status == MonitorStatus::Ok);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 4);
    CHECK(lines[1] == "1,,,,false");
    CHECK(lines[3] == "3,,,,false");
    CHECK_FALSE(r.log.empty());
  }

  TEST_CASE("fatal input") {
    CHECK(run("").status == MonitorStatus::Fatal);
    CHECK(run("t_us,nonsense\n").status == MonitorStatus::Fatal);
    const auto repeated = run(std::string(kHeader) + "\n" + std::string(kExampleRow) + "\n" + std::string(kExampleRow) + "\n");
    CHECK(repeated.status == MonitorStatus::Fatal);
    CHECK(lines_of(repeated.out).size() == 2);
    CHECK(run(std::string(kHeader) + "\n1,2,3\n").status == MonitorStatus::Fatal);
  }

  TEST_CASE("ramp stream") {
    // Near the limit the index rises steeply: a ramp stopping at 0.95 of the
    // limit stays below 80, one that reaches the limit crosses it.
    for (const double top : {0.95, 1.0}) {
      CAPTURE(top);
      const auto frames = ramp_frames(100, top);
      const auto layout = FrameCsvLayout::canonical(two_corridor_topology());
      std::string input = layout.header() + "\n";
      for (const auto& f : frames) input += layout.format_row(f) + "\n";

      const auto r = run(input);
      const auto lines = lines_of(r.out);
      REQUIRE(lines.size() == 101);

      // Offline: same frames straight through reduce/evaluate, no CSV in between.
      std::optional<std::size_t> expected_first;
      double previous = -1.0;
      for (std::size_t i = 0; i < frames.size(); ++i) {
        const double index = apparent_power_index(reduce_frame(frames[i], two_corridor_topology()));
        CHECK(index > previous);
        previous = index;
        if (!expected_first && index >= 80.0) expected_first = i;
      }
      CHECK(r.status == (expected_first ? MonitorStatus::Alarm : MonitorStatus::Ok));
      CHECK(expected_first.has_value() == (top == 1.0));

      std::optional<std::size_t> first;
      for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto fields = split_fields(lines[i]);
        REQUIRE(fields.size() == 5);
        CHECK(fields[0] == std::to_string(frames[i - 1].timestamp_us));
        if (fields[4] == "true" && !first) first = i - 1;
        if (first) CHECK(fields[4] == "true");
      }
      CHECK(first == expected_first);
      CHECK(run(input).out == r.out);
    }
  }

  TEST_CASE("monitor configuration") {
    MonitorConfig config;
    config.topology_path = std::string(AREAVOLT_DATA_DIR) + "/two_corridor_topology.json";
    CHECK_NOTHROW(config.validate());
    config.threshold_pct = 0.0;
    CHECK(code_of([&] { config.validate(); }) == Errc::InvalidArgument);
    config.threshold_pct = 200.0;
    CHECK_NOTHROW(config.validate());
    config.threshold_pct = 200.5;
    CHECK(code_of([&] { config.validate(); }) == Errc::InvalidArgument);
    config.threshold_pct = 80.0;
    config.input = "/nonexistent/frames.csv";
    CHECK(code_of([&] { config.validate(); }) == Errc::IoError);
  }

  TEST_CASE("file-level monitor") {
    const auto dir = std::filesystem::temp_directory_path() / "areavolt_unit_monitor";
    std::filesystem::create_directories(dir);
    {
      std::ofstream f(dir / "frames.csv");
      f << kHeader << '\n' << kExampleRow << '\n';
    }
    MonitorConfig config;
    config.topology_path = std::string(AREAVOLT_DATA_DIR) + "/two_corridor_topology.json";
    config.input = (dir / "frames.csv").string();
    config.output = (dir / "report.csv").string();
    config.admittance = std::string(AREAVOLT_DATA_DIR) + "/two_corridor_network.json";
    std::ostringstream log;
    CHECK(stream_monitor(config, log) == MonitorStatus::Alarm);
    std::ifstream report(dir / "report.csv");
    std::string header;
    std::getline(report, header);
    CHECK(header == kReportHeader);
    std::filesystem::remove_all(dir);
  }

  TEST_CASE("report rows") {
    MarginReport r;
    r.timestamp_us = 42;
    r.apparent_power_index_pct = 81.25;
    r.voltage_ratio = 1.2;
    r.alarm = true;
    CHECK(format_report_row(r) == "42,81.2500,,1.20000,true");
    CHECK(format_diagnostic_row(-3) == "-3,,,,false");
  }
}
