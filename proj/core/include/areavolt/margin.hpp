#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "areavolt/reduction.hpp"

namespace areavolt {

enum class IndexKind { ApparentPower, ImpedanceMatch, VoltageRatio };

std::string_view to_string(IndexKind kind) noexcept;
/// Accepts "apparent", "impedance" and "vratio". Throws Error(InvalidArgument).
IndexKind parse_index_kind(std::string_view text);

/// 100·|S_across| / |S_load| with S = V·conj(I_corridor). Reaches 100 at the
/// maximum power point. Throws Error(ZeroCurrent) or Error(ZeroLoadVoltage).
double apparent_power_index(const ReducedSystem& rs);

/// 100·|Z_thevenin| / |Z_load|. Throws Error(ZeroCurrent) when the Thevenin
/// fields are absent, Error(ZeroLoadImpedance) when |Z_load| is zero.
double impedance_match_index(const ReducedSystem& rs);

/// |V_load| / |V_gen - V_load|: 1 at collapse, above 1 on the stable side.
/// Throws Error(DegenerateVoltageDifference) near the open-circuit limit.
double voltage_ratio_index(const ReducedSystem& rs, double epsilon_dv = kDefaultVoltageEpsilon);

struct MarginConfig {
  IndexKind chosen = IndexKind::ApparentPower;
  double threshold_pct = 80.0;
};

struct MarginReport {
  std::int64_t timestamp_us = 0;
  std::optional<double> apparent_power_index_pct;
  std::optional<double> impedance_match_pct;
  std::optional<double> voltage_ratio;
  IndexKind chosen = IndexKind::ApparentPower;
  double threshold_pct = 80.0;
  bool alarm = false;

  /// The chosen index on the percentage scale; the voltage ratio maps to
  /// 100 / ratio so every index reads 100 at collapse.
  std::optional<double> chosen_pct() const;
};

/// Computes all three indices. An index that cannot be evaluated is left
/// empty; if it is the chosen one its error is rethrown. The alarm fires
/// when the chosen index is at or above the threshold.
MarginReport evaluate(const ReducedSystem& rs, const MarginConfig& config = {});

}  // namespace areavolt
