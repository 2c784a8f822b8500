#include "areavolt/margin.hpp"

#include <cmath>
#include <exception>

#include "areavolt/error.hpp"

namespace areavolt {

std::string_view to_string(IndexKind kind) noexcept {
  switch (kind) {
    case IndexKind::ApparentPower: return "apparent";
    case IndexKind::ImpedanceMatch: return "impedance";
    case IndexKind::VoltageRatio: return "vratio";
  }
  return "apparent";
}

IndexKind parse_index_kind(std::string_view text) {
  if (text == "apparent") return IndexKind::ApparentPower;
  if (text == "impedance") return IndexKind::ImpedanceMatch;
  if (text == "vratio") return IndexKind::VoltageRatio;
  throw Error(Errc::InvalidArgument, "unknown index '" + std::string(text) + "'");
}

double apparent_power_index(const ReducedSystem& rs) {
  if (!(std::abs(rs.current) >= kZeroCurrent)) throw Error(Errc::ZeroCurrent, "|I| below 1e-12");
  if (!(std::abs(rs.v_load) > 0.0)) throw Error(Errc::ZeroLoadVoltage, "|V_load| is zero");
  const Phasor s_across = rs.v_across * std::conj(rs.current);
  const Phasor s_load = rs.v_load * std::conj(rs.current);
  return 100.0 * std::abs(s_across) / std::abs(s_load);
}

double impedance_match_index(const ReducedSystem& rs) {
  if (!rs.z_thevenin || !rs.z_load) throw Error(Errc::ZeroCurrent, "Thevenin impedance unavailable");
  if (!(std::abs(*rs.z_load) > 0.0)) throw Error(Errc::ZeroLoadImpedance, "|Z_load| is zero");
  return 100.0 * std::abs(*rs.z_thevenin) / std::abs(*rs.z_load);
}

double voltage_ratio_index(const ReducedSystem& rs, double epsilon_dv) {
  const double drop = std::abs(rs.v_gen - rs.v_load);
  if (!(drop > epsilon_dv)) throw Error(Errc::DegenerateVoltageDifference, "|V_gen - V_load| below epsilon");
  return std::abs(rs.v_load) / drop;
}

std::optional<double> MarginReport::chosen_pct() const {
  switch (chosen) {
    case IndexKind::ApparentPower: return apparent_power_index_pct;
    case IndexKind::ImpedanceMatch: return impedance_match_pct;
    case IndexKind::VoltageRatio:
      if (voltage_ratio && *voltage_ratio > 0.0) return 100.0 / *voltage_ratio;
      return std::nullopt;
  }
  return std::nullopt;
}

MarginReport evaluate(const ReducedSystem& rs, const MarginConfig& config) {
  MarginReport report;
  report.timestamp_us = rs.timestamp_us;
  report.chosen = config.chosen;
  report.threshold_pct = config.threshold_pct;

  std::exception_ptr chosen_failure;
  auto attempt = [&](IndexKind kind, std::optional<double>& slot, auto&& compute) {
    try {
      slot = compute();
    } catch (const Error&) {
      if (kind == config.chosen) chosen_failure = std::current_exception();
    }
  };
  attempt(IndexKind::ApparentPower, report.apparent_power_index_pct, [&] { return apparent_power_index(rs); });
  attempt(IndexKind::ImpedanceMatch, report.impedance_match_pct, [&] { return impedance_match_index(rs); });
  attempt(IndexKind::VoltageRatio, report.voltage_ratio, [&] { return voltage_ratio_index(rs); });
  if (chosen_failure) std::rethrow_exception(chosen_failure);

  const auto chosen = report.chosen_pct();
  report.alarm = chosen && *chosen >= config.threshold_pct;
  return report;
}

}  // namespace areavolt
