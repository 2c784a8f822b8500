#include <algorithm>
#include <cmath>

#include "areavolt/error.hpp"
#include "areavolt/powerflow.hpp"

namespace areavolt {

LoadDirection proportional_direction(const PfNetwork& net) {
  LoadDirection direction;
  for (const auto& bus : net.buses) {
    if (bus.kind == BusKind::PQ) direction.push_back({bus.id, bus.p, bus.q});
  }
  return direction;
}

PfNetwork scale_loads(const PfNetwork& net, const LoadDirection& direction, double lambda, bool pf_constant) {
  PfNetwork scaled = net;
  for (const auto& part : direction) {
    auto it = std::find_if(scaled.buses.begin(), scaled.buses.end(), [&](const PfBus& b) { return b.id == part.bus; });
    if (it == scaled.buses.end() || it->kind != BusKind::PQ) {
      throw Error(Errc::InvalidArgument, "load participation on non-PQ bus '" + part.bus + "'");
    }
    const double base_p = it->p;
    const double base_q = it->q;
    it->p = lambda * part.p;
    if (pf_constant) {
      const double q = part.q ? *part.q : (base_p != 0.0 ? part.p * base_q / base_p : 0.0);
      it->q = lambda * q;
    }
  }
  return scaled;
}

Phasor total_load(const PfNetwork& net) {
  Phasor total;
  for (const auto& bus : net.buses) {
    if (bus.kind == BusKind::PQ) total += Phasor(bus.p, bus.q);
  }
  return total;
}

namespace {

/// Solved point on a one-parameter load ramp.
struct RampPoint {
  double parameter = 0.0;
  PfSolution solution;
};

/// Finds the feasibility limit of a one-parameter family by growth then
/// bisection. `probe(x, warm)` returns a converged solution or nullopt. The
/// returned point is feasible; x·(1 + resolution) failed to converge from it.
template <class Probe>
RampPoint search_limit(RampPoint feasible, double first_step, double resolution, Probe&& probe) {
  constexpr int kMaxGrowth = 80;
  constexpr int kMaxRestarts = 8;

  double step = first_step;
  for (int restart = 0; restart < kMaxRestarts; ++restart) {
    int growth = 0;
    while (auto next = probe(feasible.parameter + step, feasible.solution)) {
      feasible = {feasible.parameter + step, std::move(*next)};
      step *= 2.0;
      if (++growth > kMaxGrowth) throw Error(Errc::InvalidArgument, "load ramp has no feasibility limit");
    }
    double hi = feasible.parameter + step;
    while (hi - feasible.parameter > resolution * std::max(feasible.parameter, 1e-300)) {
      const double mid = 0.5 * (feasible.parameter + hi);
      if (mid <= feasible.parameter || mid >= hi) break;
      if (auto sol = probe(mid, feasible.solution)) {
        feasible = {mid, std::move(*sol)};
      } else {
        hi = mid;
      }
    }
    // A probe far from the warm start can fail on a feasible point; confirm
    // the upper side of the bracket before accepting it.
    const double confirm = feasible.parameter * (1.0 + resolution);
    auto beyond = probe(confirm, feasible.solution);
    if (!beyond) return feasible;
    feasible = {confirm, std::move(*beyond)};
    step = std::max(feasible.parameter * resolution * 16.0, first_step * 1e-6);
  }
  return feasible;
}

std::optional<PfSolution> try_solve(const PfNetwork& net, const VoltageMap& warm, const PfOptions& options) {
  try {
    return solve_power_flow(net, &warm, options);
  } catch (const Error& e) {
    if (e.code() == Errc::NonConvergence || e.code() == Errc::SingularJacobian) return std::nullopt;
    throw;
  }
}

}  // namespace

LoadabilityResult max_loadability(const PfNetwork& net, const LoadDirection& direction, bool pf_constant,
                                  const LoadabilityOptions& options) {
  net.validate();
  if (direction.empty()) throw Error(Errc::InvalidArgument, "empty load direction");
  double total_p = 0.0;
  for (const auto& part : direction) {
    if (!(part.p >= 0.0) || !std::isfinite(part.p)) {
      throw Error(Errc::InvalidArgument, "negative participation at bus '" + part.bus + "'");
    }
    total_p += part.p;
  }
  if (!(total_p > 0.0)) throw Error(Errc::InvalidArgument, "all load participations are zero");

  PfSolution base;
  try {
    base = solve_power_flow(net, nullptr, options.power_flow);
  } catch (const Error& e) {
    throw Error(Errc::BaseCaseInfeasible, e.what());
  }

  auto probe = [&](double lambda, const PfSolution& warm) {
    return try_solve(scale_loads(net, direction, lambda, pf_constant), warm.bus_voltages, options.power_flow);
  };

  auto start = probe(0.0, base);
  if (!start) throw Error(Errc::BaseCaseInfeasible, "ramp origin does not converge");

  // Unit step in λ is a unit step in total participating P; a tenth of the
  // system base is a reasonable first stride.
  const double first_step = 0.1 / total_p;
  RampPoint limit = search_limit({0.0, std::move(*start)}, first_step, options.resolution, probe);

  LoadabilityResult result;
  result.lambda_max = limit.parameter;
  result.critical_network = scale_loads(net, direction, limit.parameter, pf_constant);
  result.total_load_s_max = total_load(result.critical_network);
  result.total_load_p_max = result.total_load_s_max.real();
  result.critical_solution = std::move(limit.solution);
  return result;
}

Phasor two_bus_max_power(Phasor source, Phasor y, double pf_angle_rad, std::optional<double> seed_s) {
  if (!(std::abs(source) > 0.0)) throw Error(Errc::InvalidArgument, "source voltage is zero");
  if (!(std::abs(y) > 0.0)) throw Error(Errc::InvalidArgument, "line admittance is zero");

  const Phasor unit_load = std::polar(1.0, pf_angle_rad);
  PfNetwork net;
  net.buses = {
      {"source", BusKind::Slack, std::abs(source), angle_deg(source), 0.0, 0.0},
      {"load", BusKind::PQ, 1.0, 0.0, 0.0, 0.0},
  };
  net.lines = {{"line", "source", "load", y}};

  auto probe = [&](double s, const PfSolution& warm) {
    net.buses[1].p = s * unit_load.real();
    net.buses[1].q = s * unit_load.imag();
    return try_solve(net, warm.bus_voltages, PfOptions{});
  };

  auto start = probe(0.0, PfSolution{});
  if (!start) throw Error(Errc::InvalidArgument, "unloaded two-bus system does not solve");

  // Short-circuit power scale; the limit is below |E|²|Y|/2 for any lagging load.
  double first_step = 0.25 * std::norm(source) * std::abs(y);
  if (seed_s && *seed_s > 0.0) {
    if (auto at_seed = probe(*seed_s, *start)) {
      RampPoint limit = search_limit({*seed_s, std::move(*at_seed)}, 0.05 * *seed_s, 1e-10, probe);
      return limit.parameter * unit_load;
    }
    first_step = 0.5 * *seed_s;
  }
  RampPoint limit = search_limit({0.0, std::move(*start)}, first_step, 1e-10, probe);
  return limit.parameter * unit_load;
}

}  // namespace areavolt
