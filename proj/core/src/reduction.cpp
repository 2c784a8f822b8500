#include "areavolt/reduction.hpp"

#include <cmath>
#include <span>
#include <vector>

#include "areavolt/error.hpp"

namespace areavolt {

namespace {

constexpr double kZeroAdmittance = 1e-12;

Phasor admittance_of(const LineAdmittanceSet& lines, const LineId& id) {
  auto it = lines.find(id);
  if (it == lines.end()) throw Error(Errc::MissingAdmittance, "line '" + id + "'");
  return it->second;
}

Phasor sum_admittance(const LineAdmittanceSet& lines, std::span<const CorridorLine> corridor) {
  Phasor total;
  for (const auto& line : corridor) total += admittance_of(lines, line.id);
  return total;
}

WeightSet weights_over(const LineAdmittanceSet& lines, std::span<const CorridorLine> corridor,
                       const CorridorTopology& topo) {
  const Phasor y_total = sum_admittance(lines, corridor);
  if (std::abs(y_total) < kZeroAdmittance) throw Error(Errc::ZeroCorridorAdmittance, "|Y| below 1e-12");

  WeightSet weights;
  for (const auto& bus : topo.gen_buses()) weights.gen.emplace(bus, Phasor{});
  for (const auto& bus : topo.load_buses()) weights.load.emplace(bus, Phasor{});
  // Row sums for generator buses, column sums for load buses.
  for (const auto& line : corridor) {
    const Phasor y = admittance_of(lines, line.id);
    weights.gen[line.gen_bus] += y;
    weights.load[line.load_bus] += y;
  }
  for (auto& [bus, w] : weights.gen) w /= y_total;
  for (auto& [bus, w] : weights.load) w /= y_total;
  return weights;
}

Phasor voltage_at(const SynchroFrame& frame, const BusId& bus) {
  auto it = frame.bus_voltages.find(bus);
  if (it == frame.bus_voltages.end()) throw Error(Errc::MissingMeasurement, "V(" + bus + ")");
  return it->second;
}

}  // namespace

Phasor line_admittance(Phasor v_gen_side, Phasor v_load_side, Phasor current, double epsilon_dv) {
  const Phasor dv = v_gen_side - v_load_side;
  if (!(std::abs(dv) > epsilon_dv)) {
    throw Error(Errc::DegenerateVoltageDifference, "|V_gen - V_load| = " + std::to_string(std::abs(dv)));
  }
  return current / dv;
}

Phasor corridor_admittance(const LineAdmittanceSet& lines, const CorridorTopology& topo) {
  return sum_admittance(lines, topo.corridor_lines());
}

WeightSet compute_weights(const LineAdmittanceSet& lines, const CorridorTopology& topo) {
  return weights_over(lines, topo.corridor_lines(), topo);
}

LineAdmittanceSet estimate_admittances(const SynchroFrame& frame, const CorridorTopology& topo, double epsilon_dv) {
  LineAdmittanceSet out;
  for (const auto& line : topo.corridor_lines()) {
    auto current = frame.line_currents.find(line.id);
    if (current == frame.line_currents.end()) continue;
    try {
      out.emplace(line.id, line_admittance(voltage_at(frame, line.gen_bus), voltage_at(frame, line.load_bus),
                                           current->second, epsilon_dv));
    } catch (const Error& e) {
      if (e.code() != Errc::DegenerateVoltageDifference) throw;
      throw Error(Errc::DegenerateVoltageDifference, "line '" + line.id + "'");
    }
  }
  return out;
}

ReducedSystem reduce_frame(const SynchroFrame& frame, const CorridorTopology& topo, const AdmittanceSource& source) {
  std::vector<CorridorLine> in_service;
  for (const auto& line : topo.corridor_lines()) {
    if (frame.line_currents.contains(line.id)) in_service.push_back(line);
  }
  if (in_service.empty()) throw Error(Errc::MissingMeasurement, "no corridor line in service");

  ReducedSystem rs;
  rs.timestamp_us = frame.timestamp_us;
  if (const auto* estimate = std::get_if<EstimateFromFrame>(&source)) {
    rs.admittances = estimate_admittances(frame, topo, estimate->epsilon_dv);
  } else {
    const auto& known = std::get<LineAdmittanceSet>(source);
    for (const auto& line : in_service) rs.admittances.emplace(line.id, admittance_of(known, line.id));
  }

  rs.y_corridor = sum_admittance(rs.admittances, in_service);
  rs.weights = weights_over(rs.admittances, in_service, topo);
  for (const auto& [bus, w] : rs.weights.gen) rs.v_gen += w * voltage_at(frame, bus);
  for (const auto& [bus, w] : rs.weights.load) rs.v_load += w * voltage_at(frame, bus);
  rs.v_across = rs.v_gen - rs.v_load;

  // Series-only lines carry one current, so the gen-side and load-side sums agree.
  for (const auto& line : in_service) rs.current += frame.line_currents.at(line.id);

  if (std::abs(rs.current) >= kZeroCurrent) {
    rs.z_thevenin = rs.v_across / rs.current;
    rs.z_load = rs.v_load / rs.current;
  }
  return rs;
}

}  // namespace areavolt
