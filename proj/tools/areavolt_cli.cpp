// areavolt: corridor voltage-collapse monitor.
//
//   areavolt monitor --topology topo.json --input frames.csv --threshold 80
//   areavolt sweep --network net.json --topology topo.json --splits splits.json --output sweep.csv
//   areavolt golden-table1
//   areavolt synth --network net.json --topology topo.json --count 100 --output frames.csv

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <vector>

#include "areavolt/error.hpp"
#include "areavolt/frame_csv.hpp"
#include "areavolt/harness.hpp"
#include "areavolt/io.hpp"
#include "areavolt/monitor.hpp"
#include "areavolt/synth.hpp"

namespace {

using namespace areavolt;

int run_monitor(const MonitorConfig& config) {
  return static_cast<int>(stream_monitor(config, std::cerr));
}

int run_sweep(const std::string& network_path, const std::string& topology_path, const std::string& splits_path,
              const std::string& output, const std::string& format, bool serial) {
  const auto net = load_network(network_path);
  const auto topo = load_topology(topology_path);
  const auto plan = load_splits(splits_path);
  SweepOptions options;
  options.base_total_p = plan.base_total_p;
  options.parallel = !serial;
  const auto rows = error_sweep(net, topo, plan.splits, options);
  const auto table = emit_table(rows, format == "text" ? TableFormat::Text : TableFormat::Csv);
  if (output == "-") {
    std::cout << table;
  } else {
    std::ofstream out(output, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::IoError, "cannot write '" + output + "'");
    out << table;
  }
  return 0;
}

int run_golden() {
  const auto report = run_perfect_reduction();
  std::cout << describe(report);
  if (!report.passed()) {
    std::cerr << "golden-table1: FAILED at " << report.first_failure()->quantity << '\n';
    return 1;
  }
  std::cout << "golden-table1: all checks passed\n";
  return 0;
}

struct SynthArgs {
  std::string network;
  std::string topology;
  std::size_t count = 100;
  double from = 0.1;
  double to = 1.0;
  bool absolute = false;
  std::int64_t start_us = 0;
  std::int64_t interval_us = 20000;
  double noise = 0.0;
  std::uint64_t seed = 1;
  std::string output = "-";
};

int run_synth(const SynthArgs& args) {
  const auto net = load_network(args.network);
  const auto topo = load_topology(args.topology);
  const auto direction = proportional_direction(net);
  double scale = 1.0;
  if (!args.absolute) scale = max_loadability(net, direction, true).lambda_max;

  std::vector<double> trajectory(args.count);
  for (std::size_t k = 0; k < args.count; ++k) {
    const double t = args.count > 1 ? static_cast<double>(k) / static_cast<double>(args.count - 1) : 0.0;
    trajectory[k] = scale * (args.from + (args.to - args.from) * t);
  }
  FrameGenOptions options;
  options.start_us = args.start_us;
  options.noise_std = args.noise;
  options.seed = args.seed;
  const auto stream = generate_frames(net, topo, direction, trajectory, args.interval_us, options);

  std::ofstream file;
  if (args.output != "-") {
    file.open(args.output, std::ios::binary | std::ios::trunc);
    if (!file) throw Error(Errc::IoError, "cannot write '" + args.output + "'");
  }
  std::ostream& out = args.output == "-" ? std::cout : file;
  const auto layout = FrameCsvLayout::canonical(topo);
  out << layout.header() << '\n';
  for (const auto& frame : stream.frames) out << layout.format_row(frame) << '\n';
  if (stream.diagnostic) {
    std::cerr << "synth: " << *stream.diagnostic << '\n';
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Corridor voltage-collapse margin from two-ended synchrophasor measurements"};
  app.require_subcommand(1);

  MonitorConfig monitor;
  std::string index_name = "apparent";
  auto* monitor_cmd = app.add_subcommand("monitor", "Stream frame CSV through reduction and margin evaluation");
  monitor_cmd->add_option("--topology", monitor.topology_path, "Topology JSON file")->required();
  monitor_cmd->add_option("--input", monitor.input, "Frame CSV file, or - for stdin");
  monitor_cmd->add_option("--admittance", monitor.admittance, "'estimate' or a line-parameter JSON file");
  monitor_cmd->add_option("--index", index_name, "apparent | impedance | vratio")
      ->check(CLI::IsMember({"apparent", "impedance", "vratio"}));
  monitor_cmd->add_option("--threshold", monitor.threshold_pct, "Alarm threshold in percent");
  monitor_cmd->add_option("--output", monitor.output, "Report CSV file, or - for stdout");

  std::string network_path;
  std::string topology_path;
  std::string splits_path;
  std::string sweep_output = "sweep.csv";
  std::string sweep_format = "csv";
  bool serial = false;
  auto* sweep_cmd = app.add_subcommand("sweep", "Reduction error sweep over load splits");
  sweep_cmd->add_option("--network", network_path, "Network JSON file")->required();
  sweep_cmd->add_option("--topology", topology_path, "Topology JSON file")->required();
  sweep_cmd->add_option("--splits", splits_path, "Splits JSON file")->required();
  sweep_cmd->add_option("--output", sweep_output, "Output file, or - for stdout");
  sweep_cmd->add_option("--format", sweep_format, "csv | text")->check(CLI::IsMember({"csv", "text"}));
  sweep_cmd->add_flag("--serial", serial, "Compute rows on one thread");

  app.add_subcommand("golden-table1", "Run the perfect-reduction example and check it against the published table");

  SynthArgs synth;
  auto* synth_cmd = app.add_subcommand("synth", "Generate frame CSV along a proportional load ramp");
  synth_cmd->add_option("--network", synth.network, "Network JSON file")->required();
  synth_cmd->add_option("--topology", synth.topology, "Topology JSON file")->required();
  synth_cmd->add_option("--count", synth.count, "Number of frames")->check(CLI::PositiveNumber);
  synth_cmd->add_option("--from", synth.from, "First load scaling");
  synth_cmd->add_option("--to", synth.to, "Last load scaling");
  synth_cmd->add_flag("--absolute", synth.absolute, "Scalings are absolute, not fractions of lambda_max");
  synth_cmd->add_option("--start-us", synth.start_us, "Timestamp of the first frame");
  synth_cmd->add_option("--interval-us", synth.interval_us, "Frame spacing in microseconds");
  synth_cmd->add_option("--noise", synth.noise, "Measurement noise standard deviation, pu");
  synth_cmd->add_option("--seed", synth.seed, "Noise seed");
  synth_cmd->add_option("--output", synth.output, "Frame CSV file, or - for stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*monitor_cmd) {
      monitor.chosen_index = parse_index_kind(index_name);
      return run_monitor(monitor);
    }
    if (*sweep_cmd) return run_sweep(network_path, topology_path, splits_path, sweep_output, sweep_format, serial);
    if (app.got_subcommand("golden-table1")) return run_golden();
    if (*synth_cmd) return run_synth(synth);
  } catch (const std::exception& e) {
    std::cerr << "areavolt: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
