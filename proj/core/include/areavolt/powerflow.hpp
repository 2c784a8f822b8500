#pragma once

#include <map>
#include <optional>
#include <vector>

#include "areavolt/phasor.hpp"
#include "areavolt/topology.hpp"

namespace areavolt {

enum class BusKind { Slack, PV, PQ };

/// Bus data. Slack: `v_set` and `angle_deg` are fixed. PV: `p` is the real
/// power injection and `v_set` the voltage magnitude. PQ: `p` and `q` are the
/// consumed powers (load convention, positive Q is inductive).
struct PfBus {
  BusId id;
  BusKind kind = BusKind::PQ;
  double v_set = 1.0;
  double angle_deg = 0.0;
  double p = 0.0;
  double q = 0.0;

  bool operator==(const PfBus&) const = default;
};

/// Series branch with admittance `y` and no shunt charging.
struct PfLine {
  LineId id;
  BusId from;
  BusId to;
  Phasor y;

  bool operator==(const PfLine&) const = default;
};

/// Small AC network. More than one Slack bus is allowed; that is how equal
/// generator voltages are held fixed along a load ramp.
struct PfNetwork {
  std::vector<PfBus> buses;
  std::vector<PfLine> lines;

  const PfBus* find_bus(const BusId& id) const noexcept;
  const PfLine* find_line(const LineId& id) const noexcept;

  /// Throws Error(InvalidNetwork) on duplicate ids, dangling endpoints, zero
  /// admittances, negative load, a missing Slack bus or a disconnected graph.
  void validate() const;

  bool operator==(const PfNetwork&) const = default;
};

using VoltageMap = std::map<BusId, Phasor>;

struct PfSolution {
  VoltageMap bus_voltages;
  std::map<LineId, Phasor> line_currents;  // from -> to
  bool converged = false;
  int iterations = 0;
  double max_mismatch = 0.0;
};

struct PfOptions {
  double tolerance = 1e-8;  // pu, infinity norm of the P/Q mismatch
  int max_iterations = 50;
};

/// Newton-Raphson in polar coordinates. Flat start unless `initial_guess`
/// supplies voltages (Slack buses always keep their set-point; PV buses keep
/// their magnitude). Throws NonConvergenceError or Error(SingularJacobian).
PfSolution solve_power_flow(const PfNetwork& net, const VoltageMap* initial_guess = nullptr,
                            const PfOptions& options = {});

/// Complex power injected into the network at every bus, V·conj(Ybus·V).
std::map<BusId, Phasor> bus_injections(const PfNetwork& net, const VoltageMap& voltages);

// ---------------------------------------------------------------------------
// Maximum loadability

/// Participation of one PQ bus in a load ramp. At scaling λ the bus consumes
/// λ·p, and λ·q when the power factor is held. Without an explicit `q` the
/// base-case ratio Q/P of the bus is used (zero when the base P is zero).
struct LoadParticipation {
  BusId bus;
  double p = 0.0;
  std::optional<double> q;
};

using LoadDirection = std::vector<LoadParticipation>;

/// Direction that scales every PQ load of `net` in proportion to its base
/// consumption.
LoadDirection proportional_direction(const PfNetwork& net);

/// Copy of `net` with participating loads set to their value at scaling λ.
/// Non-participating buses are untouched; with `pf_constant == false` the
/// reactive load of participating buses stays at its base value.
PfNetwork scale_loads(const PfNetwork& net, const LoadDirection& direction, double lambda, bool pf_constant);

/// Total consumption over all PQ buses.
Phasor total_load(const PfNetwork& net);

struct LoadabilityOptions {
  double resolution = 1e-5;  // relative bracket width on λ
  PfOptions power_flow{};
};

struct LoadabilityResult {
  double lambda_max = 0.0;
  double total_load_p_max = 0.0;
  Phasor total_load_s_max;
  PfSolution critical_solution;  // converged state at lambda_max
  PfNetwork critical_network;    // loads at lambda_max
};

/// Largest λ for which the power flow converges along load(λ) = λ·direction.
/// Bisection on λ with warm-started Newton-Raphson as the feasibility test.
/// Throws Error(BaseCaseInfeasible) if `net` itself does not solve, and
/// Error(InvalidArgument) for an empty, negative or unbounded direction.
LoadabilityResult max_loadability(const PfNetwork& net, const LoadDirection& direction, bool pf_constant,
                                  const LoadabilityOptions& options = {});

/// Maximum complex power a constant-power-factor PQ load can draw from a
/// fixed source `source` through series admittance `y`. `pf_angle_rad` is
/// the load power-factor angle (positive = lagging). `seed_s` is an optional
/// starting apparent power for the bisection.
Phasor two_bus_max_power(Phasor source, Phasor y, double pf_angle_rad,
                         std::optional<double> seed_s = std::nullopt);

}  // namespace areavolt
