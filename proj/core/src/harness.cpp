#include "areavolt/harness.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <future>
#include <numeric>
#include <sstream>

#include "areavolt/csv.hpp"
#include "areavolt/error.hpp"
#include "areavolt/synth.hpp"

namespace areavolt {

TwoCorridorAdmittances table1_admittances() {
  return {{3.8, -19.1}, {11.4, -57.2}, {5.2, -25.8}, {8.2, -34.8}};
}

CorridorTopology two_corridor_topology() {
  return CorridorTopology::build({"g1", "g2"}, {"l1", "l2"}, {{"g1-l1", "g1", "l1"}, {"g2-l2", "g2", "l2"}},
                                 {{"g1-g2", "g1", "g2"}, {"l1-l2", "l1", "l2"}});
}

PfNetwork two_corridor_network(const TwoCorridorAdmittances& y, Phasor v_gen, Phasor load_l1, Phasor load_l2) {
  PfNetwork net;
  const double v = std::abs(v_gen);
  const double ang = angle_deg(v_gen);
  net.buses = {
      {"g1", BusKind::Slack, v, ang, 0.0, 0.0},
      {"g2", BusKind::Slack, v, ang, 0.0, 0.0},
      {"l1", BusKind::PQ, 1.0, 0.0, load_l1.real(), load_l1.imag()},
      {"l2", BusKind::PQ, 1.0, 0.0, load_l2.real(), load_l2.imag()},
  };
  net.lines = {
      {"g1-l1", "g1", "l1", y.g1_l1},
      {"g2-l2", "g2", "l2", y.g2_l2},
      {"g1-g2", "g1", "g2", y.g1_g2},
      {"l1-l2", "l1", "l2", y.l1_l2},
  };
  return net;
}

PfNetwork default_sweep_network() {
  return two_corridor_network(table1_admittances(), {1.0, 0.0}, {0.5, 0.3}, {1.5, 0.9});
}

std::vector<std::vector<double>> default_sweep_splits() {
  std::vector<std::vector<double>> splits;
  for (double share : {1.0, 0.9, 0.8, 0.7, 0.6, 0.5, 0.4, 0.3, 0.25, 0.2, 0.1, 0.0}) {
    splits.push_back({share, 1.0 - share});
  }
  return splits;
}

// ---------------------------------------------------------------------------

double GoldenCheck::relative_error() const { return areavolt::relative_error(actual, expected); }

bool PerfectReductionReport::passed() const { return first_failure() == nullptr; }

const GoldenCheck* PerfectReductionReport::first_failure() const {
  auto it = std::find_if(checks.begin(), checks.end(), [](const GoldenCheck& c) { return !c.passed(); });
  return it == checks.end() ? nullptr : &*it;
}

PerfectReductionReport perfect_reduction(const PerfectReductionCase& c) {
  constexpr double kSelfConsistency = 1e-10;
  constexpr double kEquivalence = 1e-4;

  const auto topo = two_corridor_topology();
  const auto& y = c.admittances;

  PerfectReductionReport report;
  auto& frame = report.frame;
  frame.timestamp_us = 0;
  frame.bus_voltages = {{"g1", c.v_gen}, {"g2", c.v_gen}, {"l1", c.v_load}, {"l2", c.v_load}};
  const Phasor i1 = y.g1_l1 * (c.v_gen - c.v_load);
  const Phasor i2 = y.g2_l2 * (c.v_gen - c.v_load);
  frame.line_currents = {{"g1-l1", i1}, {"g2-l2", i2}, {"g1-g2", Phasor{}}, {"l1-l2", Phasor{}}};
  validate_frame(frame, topo);

  report.reduced = reduce_frame(frame, topo);
  const auto& rs = report.reduced;
  report.margin = evaluate(rs);
  report.s_across = rs.v_across * std::conj(rs.current);
  report.s_load = rs.v_load * std::conj(rs.current);

  // Complete network: ramp both loads along the powers they draw in this state.
  const Phasor s1 = c.v_load * std::conj(i1);
  const Phasor s2 = c.v_load * std::conj(i2);
  const PfNetwork net = two_corridor_network(y, c.v_gen, 0.5 * s1, 0.5 * s2);
  const LoadDirection direction{{"l1", s1.real(), s1.imag()}, {"l2", s2.real(), s2.imag()}};
  const auto complete = max_loadability(net, direction, true);
  report.lambda_max_complete = complete.lambda_max;
  report.s_max_complete = complete.total_load_s_max;
  report.s_max_reduced = two_bus_max_power(rs.v_gen, rs.y_corridor, std::arg(report.s_load), std::abs(s1 + s2));

  auto add = [&](std::string name, Phasor expected, Phasor actual, double tol) {
    report.checks.push_back({std::move(name), expected, actual, tol});
  };
  Phasor gen_sum;
  Phasor load_sum;
  for (const auto& [bus, w] : rs.weights.gen) gen_sum += w;
  for (const auto& [bus, w] : rs.weights.load) load_sum += w;
  add("sum of generator weights", 1.0, gen_sum, kSelfConsistency);
  add("sum of load weights", 1.0, load_sum, kSelfConsistency);
  add("corridor current identity Y_gl*(V_g - V_l)", y.g1_l1 * (c.v_gen - c.v_load) + y.g2_l2 * (c.v_gen - c.v_load),
      rs.y_corridor * rs.v_across, kSelfConsistency);
  if (rs.z_thevenin && rs.z_load) {
    add("Z_gl*I = V_gl", rs.v_across, *rs.z_thevenin * rs.current, kSelfConsistency);
    add("Z_l*I = V_l", rs.v_load, *rs.z_load * rs.current, kSelfConsistency);
  }
  if (report.margin.apparent_power_index_pct) {
    add("apparent index = 100|V_gl|/|V_l|", 100.0 * std::abs(rs.v_across) / std::abs(rs.v_load),
        *report.margin.apparent_power_index_pct, kSelfConsistency);
  }
  add("|S_max| complete vs reduced", std::abs(report.s_max_reduced), std::abs(report.s_max_complete), kEquivalence);
  return report;
}

PerfectReductionReport run_perfect_reduction() {
  constexpr double kPrinted = 0.05;
  PerfectReductionReport report = perfect_reduction({table1_admittances(), {1.0, 0.0}, {0.5, -0.2}});
  const auto& rs = report.reduced;
  auto add = [&](std::string name, Phasor printed, Phasor actual) {
    report.checks.push_back({std::move(name), printed, actual, kPrinted});
  };
  add("Y_gl", {15.3, -76.3}, rs.y_corridor);
  add("|Y_gl|", 77.82, std::abs(rs.y_corridor));
  add("w_g1", 0.25, rs.weights.gen.at("g1"));
  add("w_g2", 0.75, rs.weights.gen.at("g2"));
  add("w_l1", 0.25, rs.weights.load.at("l1"));
  add("w_l2", 0.75, rs.weights.load.at("l2"));
  add("V_g", {1.0, 0.0}, rs.v_gen);
  add("V_l", {0.5, -0.2}, rs.v_load);
  add("V_gl", {0.5, 0.2}, rs.v_across);
  add("I_gl", {24.5, -34.8}, rs.current);
  add("|Y_l|", 77.82, std::abs(rs.current) / std::abs(rs.v_load));
  add("|S_gl|", 23.3, std::abs(report.s_across));
  add("|S_l|", 23.3, std::abs(report.s_load));
  add("|S_max| complete", 23.3, std::abs(report.s_max_complete));
  add("Index", 100.0, report.margin.apparent_power_index_pct.value_or(0.0));
  return report;
}

void require_passed(const PerfectReductionReport& report) {
  if (const auto* failed = report.first_failure()) {
    char detail[160];
    std::snprintf(detail, sizeof detail, " (relative error %.3e > %.1e)", failed->relative_error(), failed->tolerance);
    throw Error(Errc::AssertionFailure, failed->quantity + detail);
  }
}

std::string describe(const PerfectReductionReport& report) {
  std::ostringstream out;
  char line[256];
  auto phasor = [](Phasor v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f %c j%.4f", v.real(), v.imag() < 0 ? '-' : '+', std::abs(v.imag()));
    return std::string(buf);
  };
  const auto& rs = report.reduced;
  out << "reduced system\n";
  out << "  Y_gl  = " << phasor(rs.y_corridor) << "\n";
  out << "  V_g   = " << phasor(rs.v_gen) << "\n";
  out << "  V_l   = " << phasor(rs.v_load) << "\n";
  out << "  V_gl  = " << phasor(rs.v_across) << "\n";
  out << "  I_gl  = " << phasor(rs.current) << "\n";
  out << "  S_gl  = " << phasor(report.s_across) << "\n";
  out << "  S_l   = " << phasor(report.s_load) << "\n";
  std::snprintf(line, sizeof line, "  index apparent %.4f %%, impedance %.4f %%, voltage ratio %.6f\n",
                report.margin.apparent_power_index_pct.value_or(NAN), report.margin.impedance_match_pct.value_or(NAN),
                report.margin.voltage_ratio.value_or(NAN));
  out << line;
  std::snprintf(line, sizeof line, "complete system lambda_max %.6f, |S_max| %.6f; reduced |S_max| %.6f\n",
                report.lambda_max_complete, std::abs(report.s_max_complete), std::abs(report.s_max_reduced));
  out << line;
  out << "checks\n";
  for (const auto& check : report.checks) {
    std::snprintf(line, sizeof line, "  [%s] %-44s rel.err %.2e (tol %.0e)\n", check.passed() ? "pass" : "FAIL",
                  check.quantity.c_str(), check.relative_error(), check.tolerance);
    out << line;
  }
  return out.str();
}

// ---------------------------------------------------------------------------

namespace {

SweepRow sweep_one(const PfNetwork& net, const CorridorTopology& topo, const std::vector<double>& split,
                   std::size_t split_index, double base_total_p, double tan_phi, const LoadabilityOptions& options) {
  const auto& loads = topo.load_buses();
  if (split.size() != loads.size()) {
    throw Error(Errc::InvalidArgument, "split " + std::to_string(split_index) + " has " +
                                           std::to_string(split.size()) + " shares for " +
                                           std::to_string(loads.size()) + " load buses");
  }
  const double share_sum = std::accumulate(split.begin(), split.end(), 0.0);
  if (std::any_of(split.begin(), split.end(), [](double s) { return !(s >= 0.0); }) || !(share_sum > 0.0)) {
    throw Error(Errc::InvalidArgument, "split " + std::to_string(split_index) + " has invalid shares");
  }

  PfNetwork loaded = net;
  LoadDirection direction;
  for (std::size_t j = 0; j < loads.size(); ++j) {
    auto bus = std::find_if(loaded.buses.begin(), loaded.buses.end(), [&](const PfBus& b) { return b.id == loads[j]; });
    const double p = base_total_p * split[j] / share_sum;
    bus->p = p;
    bus->q = p * tan_phi;
    direction.push_back({bus->id, p, p * tan_phi});
  }

  LoadabilityResult complete;
  try {
    complete = max_loadability(loaded, direction, true, options);
  } catch (const Error& e) {
    if (e.code() != Errc::BaseCaseInfeasible) throw;
    throw Error(Errc::BaseCaseInfeasible, "split " + std::to_string(split_index) + ": " + e.what());
  }

  const auto frame = frame_from_solution(complete.critical_network, complete.critical_solution, topo, 0);
  const auto rs = reduce_frame(frame, topo);
  const Phasor s_load = rs.v_load * std::conj(rs.current);
  const Phasor s_max_reduced =
      two_bus_max_power(rs.v_gen, rs.y_corridor, std::arg(s_load), std::abs(complete.total_load_s_max));

  const Phasor v1 = frame.bus_voltages.at(loads[0]);
  const Phasor v2 = frame.bus_voltages.at(loads[1]);
  SweepRow row;
  row.p_max_l1 = complete.critical_network.find_bus(loads[0])->p;
  row.p_max_l2 = complete.critical_network.find_bus(loads[1])->p;
  row.p_max_total = complete.total_load_p_max;
  row.dv_mag = std::abs(v1) - std::abs(v2);
  row.d_angle_deg = wrap_deg(angle_deg(v1) - angle_deg(v2));
  row.p_max_reduced = s_max_reduced.real();
  row.error_pct = 100.0 * (row.p_max_total - row.p_max_reduced) / row.p_max_reduced;
  return row;
}

}  // namespace

std::vector<SweepRow> error_sweep(const PfNetwork& net, const CorridorTopology& topo,
                                  const std::vector<std::vector<double>>& splits, const SweepOptions& options) {
  net.validate();
  if (topo.load_buses().size() != 2) throw Error(Errc::InvalidArgument, "error sweep needs exactly two load buses");
  Phasor base_load;
  for (const auto& id : topo.load_buses()) {
    const PfBus* bus = net.find_bus(id);
    if (!bus || bus->kind != BusKind::PQ) throw Error(Errc::TopologyMismatch, "load bus '" + id + "' is not PQ");
    base_load += Phasor(bus->p, bus->q);
  }
  const double base_total_p = options.base_total_p.value_or(base_load.real());
  if (!(base_total_p > 0.0)) throw Error(Errc::InvalidArgument, "base total load must be positive");
  // Every load keeps the power factor of the base total load.
  const double tan_phi = base_load.real() > 0.0 ? base_load.imag() / base_load.real() : 0.0;

  std::vector<SweepRow> rows(splits.size());
  if (options.parallel && splits.size() > 1) {
    std::vector<std::future<SweepRow>> pending;
    pending.reserve(splits.size());
    for (std::size_t k = 0; k < splits.size(); ++k) {
      pending.push_back(std::async(std::launch::async, sweep_one, std::cref(net), std::cref(topo),
                                   std::cref(splits[k]), k, base_total_p, tan_phi, std::cref(options.loadability)));
    }
    for (std::size_t k = 0; k < splits.size(); ++k) rows[k] = pending[k].get();
  } else {
    for (std::size_t k = 0; k < splits.size(); ++k) {
      rows[k] = sweep_one(net, topo, splits[k], k, base_total_p, tan_phi, options.loadability);
    }
  }
  return rows;
}

std::string emit_table(const std::vector<SweepRow>& rows, TableFormat format) {
  auto values = [](const SweepRow& r) {
    return std::array<double, 7>{r.p_max_l1, r.p_max_l2, r.p_max_total, r.dv_mag,
                                 r.d_angle_deg, r.p_max_reduced, r.error_pct};
  };
  std::string out;
  if (format == TableFormat::Csv) {
    out += kSweepCsvHeader;
    out += '\n';
    for (const auto& row : rows) {
      const auto v = values(row);
      for (std::size_t c = 0; c < v.size(); ++c) {
        if (c) out += ',';
        out += format_decimal(v[c]);
      }
      out += '\n';
    }
    return out;
  }

  static constexpr std::array<const char*, 7> kNames{"P_l1", "P_l2", "P_total", "V_l1-V_l2", "d_l1-d_l2",
                                                      "P_reduced", "error"};
  static constexpr std::array<const char*, 7> kUnits{"pu", "pu", "pu", "pu", "deg", "pu", "%"};
  char cell[32];
  auto append_row = [&](auto&& text_of) {
    for (std::size_t c = 0; c < 7; ++c) {
      std::snprintf(cell, sizeof cell, "%13s", text_of(c).c_str());
      out += cell;
    }
    out += '\n';
  };
  append_row([](std::size_t c) { return std::string(kNames[c]); });
  append_row([](std::size_t c) { return std::string(kUnits[c]); });
  for (const auto& row : rows) {
    const auto v = values(row);
    append_row([&](std::size_t c) { return format_decimal(v[c]); });
  }
  out += "error = 100*(P_total - P_reduced)/P_reduced; negative means the reduced system overestimates\n";
  return out;
}

std::vector<SweepRow> parse_sweep_csv(std::string_view text) {
  std::vector<SweepRow> rows;
  std::size_t line_number = 0;
  bool header_seen = false;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    auto line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_number;
    if (line.empty() || line == "\r") continue;
    if (!header_seen) {
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      if (line != kSweepCsvHeader) throw MalformedRowError(line_number, 1, "unexpected sweep header");
      header_seen = true;
      continue;
    }
    const auto fields = split_fields(line);
    if (fields.size() != 7) throw MalformedRowError(line_number, fields.size(), "expected 7 fields");
    std::array<double, 7> v{};
    for (std::size_t c = 0; c < 7; ++c) {
      const auto* end = fields[c].data() + fields[c].size();
      auto [ptr, ec] = std::from_chars(fields[c].data(), end, v[c]);
      if (ec != std::errc{} || ptr != end) throw MalformedRowError(line_number, c + 1, "bad number");
    }
    rows.push_back({v[0], v[1], v[2], v[3], v[4], v[5], v[6]});
  }
  return rows;
}

}  // namespace areavolt
