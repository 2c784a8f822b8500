#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "areavolt/frame.hpp"
#include "areavolt/margin.hpp"
#include "areavolt/powerflow.hpp"
#include "areavolt/reduction.hpp"
#include "areavolt/topology.hpp"

namespace areavolt {

// ---------------------------------------------------------------------------
// Two-generator, two-load test system
//
//   g1 ---- l1        corridor lines g1-l1 and g2-l2,
//   |        |        ties g1-g2 and l1-l2
//   g2 ---- l2

struct TwoCorridorAdmittances {
  Phasor g1_l1;
  Phasor g2_l2;
  Phasor g1_g2;
  Phasor l1_l2;
};

/// Line admittances of the published perfect-reduction example.
TwoCorridorAdmittances table1_admittances();

/// Buses g1, g2, l1, l2; corridor lines "g1-l1", "g2-l2"; ties "g1-g2", "l1-l2".
CorridorTopology two_corridor_topology();

/// Both generators are Slack buses held at `v_gen`, so generator voltages
/// stay equal under any load. Loads are consumed complex powers.
PfNetwork two_corridor_network(const TwoCorridorAdmittances& y, Phasor v_gen, Phasor load_l1, Phasor load_l2);

/// Network used by the default error sweep: the perfect-reduction example's
/// admittances, generators at 1∠0, light base load with power factor 20:12.
PfNetwork default_sweep_network();

/// Load shares for l1 (l2 takes the rest) used by the default sweep.
std::vector<std::vector<double>> default_sweep_splits();

// ---------------------------------------------------------------------------
// Perfect-reduction case

struct GoldenCheck {
  std::string quantity;
  Phasor expected;
  Phasor actual;
  double tolerance = 0.0;  // relative, |actual - expected| / |expected|

  double relative_error() const;
  bool passed() const { return relative_error() <= tolerance; }
};

struct PerfectReductionCase {
  TwoCorridorAdmittances admittances;
  Phasor v_gen;
  Phasor v_load;
};

struct PerfectReductionReport {
  SynchroFrame frame;
  ReducedSystem reduced;
  MarginReport margin;
  Phasor s_across;           // V_across·conj(I)
  Phasor s_load;             // V_load·conj(I)
  double lambda_max_complete = 0.0;
  Phasor s_max_complete;     // complete network, total load at collapse
  Phasor s_max_reduced;      // two-bus equivalent at collapse
  std::vector<GoldenCheck> checks;

  bool passed() const;
  const GoldenCheck* first_failure() const;
};

/// Equal generator voltages and equal load voltages on the two-corridor
/// system: builds the frame, reduces it, evaluates all indices and compares
/// the complete network's maximum loadability with the reduced two-bus
/// maximum power. Self-consistency checks at 1e-10, equivalence at 1e-4.
PerfectReductionReport perfect_reduction(const PerfectReductionCase& c);

/// The published example plus its printed values at 5 % relative tolerance.
PerfectReductionReport run_perfect_reduction();

/// Throws Error(AssertionFailure) naming the first failed check.
void require_passed(const PerfectReductionReport& report);

std::string describe(const PerfectReductionReport& report);

// ---------------------------------------------------------------------------
// Error sweep

struct SweepRow {
  double p_max_l1 = 0.0;       // pu, complete system at collapse
  double p_max_l2 = 0.0;
  double p_max_total = 0.0;
  double dv_mag = 0.0;         // |V_l1| - |V_l2|, pu
  double d_angle_deg = 0.0;    // angle(V_l1) - angle(V_l2), degrees
  double p_max_reduced = 0.0;  // pu, two-bus equivalent
  double error_pct = 0.0;      // 100·(p_max_total - p_max_reduced) / p_max_reduced

  bool operator==(const SweepRow&) const = default;
};

struct SweepOptions {
  /// Total base real load redistributed by each split; defaults to the
  /// network's total load on the topology's load buses.
  std::optional<double> base_total_p;
  bool parallel = true;
  LoadabilityOptions loadability{};
};

/// For each split of the base load between the two load buses: maximum
/// loadability of the complete system with proportional load increase, the
/// area-voltage reduction of its collapse state, the reduced two-bus maximum
/// power, and the signed error. Rows follow split order.
std::vector<SweepRow> error_sweep(const PfNetwork& net, const CorridorTopology& topo,
                                  const std::vector<std::vector<double>>& splits, const SweepOptions& options = {});

enum class TableFormat { Text, Csv };

inline constexpr std::string_view kSweepCsvHeader =
    "p_max_l1,p_max_l2,p_max_total,dv_mag,d_angle_deg,p_max_reduced,error_pct";

std::string emit_table(const std::vector<SweepRow>& rows, TableFormat format);

/// Reads back the CSV produced by emit_table. Throws MalformedRowError.
std::vector<SweepRow> parse_sweep_csv(std::string_view text);

}  // namespace areavolt
