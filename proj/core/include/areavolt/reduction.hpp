#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <variant>

#include "areavolt/frame.hpp"
#include "areavolt/phasor.hpp"
#include "areavolt/topology.hpp"

namespace areavolt {

/// Series admittance per corridor line, per unit.
using LineAdmittanceSet = std::map<LineId, Phasor>;

/// Complex admittance weights of the boundary buses. Each side sums to 1.
struct WeightSet {
  std::map<BusId, Phasor> gen;
  std::map<BusId, Phasor> load;
};

/// Single-line equivalent of the corridor for one frame.
///
/// The Thevenin fields are empty when the aggregate current is (numerically)
/// zero; the voltages are always filled.
struct ReducedSystem {
  std::int64_t timestamp_us = 0;
  Phasor v_gen;       // admittance-weighted generator voltage
  Phasor v_load;      // admittance-weighted load voltage
  Phasor v_across;    // area voltage, v_gen - v_load
  Phasor current;     // total corridor current, gen -> load
  Phasor y_corridor;  // sum of in-service corridor admittances
  std::optional<Phasor> z_thevenin;  // v_across / current
  std::optional<Phasor> z_load;      // v_load / current
  WeightSet weights;
  LineAdmittanceSet admittances;  // in-service lines used for this frame
};

inline constexpr double kDefaultVoltageEpsilon = 1e-9;
inline constexpr double kZeroCurrent = 1e-12;

/// Y = I / (V_gen - V_load). Throws Error(DegenerateVoltageDifference) when
/// the voltage difference is at most `epsilon_dv`.
Phasor line_admittance(Phasor v_gen_side, Phasor v_load_side, Phasor current,
                       double epsilon_dv = kDefaultVoltageEpsilon);

/// Sum of the corridor-line admittances of `topo`; intra-area ties are not
/// part of the sum. Throws Error(MissingAdmittance).
Phasor corridor_admittance(const LineAdmittanceSet& lines, const CorridorTopology& topo);

/// Per-bus weights: admittance incident on the bus over the corridor
/// admittance. Throws Error(MissingAdmittance) or Error(ZeroCorridorAdmittance).
WeightSet compute_weights(const LineAdmittanceSet& lines, const CorridorTopology& topo);

/// Admittance of every in-service corridor line of `frame` from its two-ended
/// measurements.
LineAdmittanceSet estimate_admittances(const SynchroFrame& frame, const CorridorTopology& topo,
                                       double epsilon_dv = kDefaultVoltageEpsilon);

/// Admittances come from each frame's own measurements.
struct EstimateFromFrame {
  double epsilon_dv = kDefaultVoltageEpsilon;
};

/// Either per-frame estimation or a fixed set of known line parameters.
using AdmittanceSource = std::variant<EstimateFromFrame, LineAdmittanceSet>;

/// Collapses a frame into its single-line equivalent. Corridor lines without
/// a current in the frame are out of service and drop out of the sums and
/// weights. The frame is expected to be validated already.
ReducedSystem reduce_frame(const SynchroFrame& frame, const CorridorTopology& topo,
                           const AdmittanceSource& source = EstimateFromFrame{});

}  // namespace areavolt
