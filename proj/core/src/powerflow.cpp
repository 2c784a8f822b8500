#include "areavolt/powerflow.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <queue>
#include <set>
#include <unordered_map>

#include "areavolt/error.hpp"

namespace areavolt {

const PfBus* PfNetwork::find_bus(const BusId& id) const noexcept {
  auto it = std::find_if(buses.begin(), buses.end(), [&](const PfBus& b) { return b.id == id; });
  return it == buses.end() ? nullptr : &*it;
}

const PfLine* PfNetwork::find_line(const LineId& id) const noexcept {
  auto it = std::find_if(lines.begin(), lines.end(), [&](const PfLine& l) { return l.id == id; });
  return it == lines.end() ? nullptr : &*it;
}

void PfNetwork::validate() const {
  if (buses.empty()) throw Error(Errc::InvalidNetwork, "no buses");
  std::unordered_map<BusId, std::size_t> index;
  std::size_t slack_count = 0;
  for (const auto& bus : buses) {
    if (!index.emplace(bus.id, index.size()).second) throw Error(Errc::InvalidNetwork, "duplicate bus '" + bus.id + "'");
    if (!std::isfinite(bus.v_set) || !std::isfinite(bus.angle_deg) || !std::isfinite(bus.p) || !std::isfinite(bus.q)) {
      throw Error(Errc::InvalidNetwork, "non-finite data at bus '" + bus.id + "'");
    }
    if (bus.kind == BusKind::Slack) ++slack_count;
    if (bus.kind != BusKind::PQ && bus.v_set <= 0.0) {
      throw Error(Errc::InvalidNetwork, "non-positive voltage set-point at bus '" + bus.id + "'");
    }
    if (bus.kind == BusKind::PQ && bus.p < 0.0) {
      throw Error(Errc::InvalidNetwork, "negative load at bus '" + bus.id + "'");
    }
  }
  if (slack_count == 0) throw Error(Errc::InvalidNetwork, "no Slack bus");

  std::set<LineId> line_ids;
  std::vector<std::vector<std::size_t>> adjacency(buses.size());
  for (const auto& line : lines) {
    if (!line_ids.insert(line.id).second) throw Error(Errc::InvalidNetwork, "duplicate line '" + line.id + "'");
    auto from = index.find(line.from);
    auto to = index.find(line.to);
    if (from == index.end() || to == index.end()) {
      throw Error(Errc::InvalidNetwork, "line '" + line.id + "' has an unknown endpoint");
    }
    if (from->second == to->second) throw Error(Errc::InvalidNetwork, "line '" + line.id + "' is a self loop");
    if (!is_finite(line.y) || std::abs(line.y) == 0.0) {
      throw Error(Errc::InvalidNetwork, "line '" + line.id + "' has zero or non-finite admittance");
    }
    adjacency[from->second].push_back(to->second);
    adjacency[to->second].push_back(from->second);
  }

  std::vector<bool> seen(buses.size(), false);
  std::queue<std::size_t> frontier;
  frontier.push(0);
  seen[0] = true;
  std::size_t reached = 1;
  while (!frontier.empty()) {
    const auto k = frontier.front();
    frontier.pop();
    for (auto next : adjacency[k]) {
      if (!seen[next]) {
        seen[next] = true;
        ++reached;
        frontier.push(next);
      }
    }
  }
  if (reached != buses.size()) throw Error(Errc::InvalidNetwork, "network is not connected");
}

namespace {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

struct Indexed {
  std::unordered_map<BusId, Eigen::Index> bus_index;
  CMatrix ybus;
};

Indexed index_network(const PfNetwork& net) {
  Indexed out;
  const auto n = static_cast<Eigen::Index>(net.buses.size());
  for (Eigen::Index k = 0; k < n; ++k) out.bus_index.emplace(net.buses[k].id, k);
  out.ybus = CMatrix::Zero(n, n);
  for (const auto& line : net.lines) {
    const auto i = out.bus_index.at(line.from);
    const auto j = out.bus_index.at(line.to);
    out.ybus(i, i) += line.y;
    out.ybus(j, j) += line.y;
    out.ybus(i, j) -= line.y;
    out.ybus(j, i) -= line.y;
  }
  return out;
}

CVector injections(const CMatrix& ybus, const CVector& v) {
  return v.cwiseProduct((ybus * v).conjugate());
}

}  // namespace

std::map<BusId, Phasor> bus_injections(const PfNetwork& net, const VoltageMap& voltages) {
  const auto idx = index_network(net);
  CVector v(static_cast<Eigen::Index>(net.buses.size()));
  for (const auto& [id, k] : idx.bus_index) {
    auto it = voltages.find(id);
    if (it == voltages.end()) throw Error(Errc::InvalidArgument, "no voltage for bus '" + id + "'");
    v(k) = it->second;
  }
  const CVector s = injections(idx.ybus, v);
  std::map<BusId, Phasor> out;
  for (const auto& [id, k] : idx.bus_index) out.emplace(id, s(k));
  return out;
}

PfSolution solve_power_flow(const PfNetwork& net, const VoltageMap* initial_guess, const PfOptions& options) {
  net.validate();
  const auto idx = index_network(net);
  const auto n = static_cast<Eigen::Index>(net.buses.size());

  double reference_angle = 0.0;
  for (const auto& bus : net.buses) {
    if (bus.kind == BusKind::Slack) {
      reference_angle = deg_to_rad(bus.angle_deg);
      break;
    }
  }

  // Unknowns: angles of PV and PQ buses, then magnitudes of PQ buses.
  std::vector<Eigen::Index> pvpq;
  std::vector<Eigen::Index> pq;
  Eigen::VectorXd vm(n);
  Eigen::VectorXd va(n);
  Eigen::VectorXd p_spec = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd q_spec = Eigen::VectorXd::Zero(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const auto& bus = net.buses[k];
    std::optional<Phasor> guess;
    if (initial_guess) {
      if (auto it = initial_guess->find(bus.id); it != initial_guess->end() && is_finite(it->second) &&
                                                  std::abs(it->second) > 0.0) {
        guess = it->second;
      }
    }
    switch (bus.kind) {
      case BusKind::Slack:
        vm(k) = bus.v_set;
        va(k) = deg_to_rad(bus.angle_deg);
        break;
      case BusKind::PV:
        vm(k) = bus.v_set;
        va(k) = guess ? std::arg(*guess) : reference_angle;
        p_spec(k) = bus.p;
        pvpq.push_back(k);
        break;
      case BusKind::PQ:
        vm(k) = guess ? std::abs(*guess) : 1.0;
        va(k) = guess ? std::arg(*guess) : reference_angle;
        p_spec(k) = -bus.p;
        q_spec(k) = -bus.q;
        pvpq.push_back(k);
        pq.push_back(k);
        break;
    }
  }

  const auto n_ang = static_cast<Eigen::Index>(pvpq.size());
  const auto n_mag = static_cast<Eigen::Index>(pq.size());
  const auto dim = n_ang + n_mag;

  auto voltage = [&] {
    CVector v(n);
    // Magnitudes may go negative mid-iteration; std::polar does not allow that.
    for (Eigen::Index k = 0; k < n; ++k) v(k) = Phasor(vm(k) * std::cos(va(k)), vm(k) * std::sin(va(k)));
    return v;
  };

  auto mismatch = [&](const CVector& v, Eigen::VectorXd& f) {
    const CVector s = injections(idx.ybus, v);
    f.resize(dim);
    for (Eigen::Index r = 0; r < n_ang; ++r) f(r) = s(pvpq[r]).real() - p_spec(pvpq[r]);
    for (Eigen::Index r = 0; r < n_mag; ++r) f(n_ang + r) = s(pq[r]).imag() - q_spec(pq[r]);
    return dim == 0 ? 0.0 : f.cwiseAbs().maxCoeff();
  };

  PfSolution sol;
  Eigen::VectorXd f;
  CVector v = voltage();
  double norm = mismatch(v, f);
  int iter = 0;
  while (!(norm <= options.tolerance)) {
    if (!std::isfinite(norm) || iter >= options.max_iterations) throw NonConvergenceError(iter, norm);

    // dS/dVa = j·diag(V)·conj(diag(I) - Ybus·diag(V))
    // dS/dVm = diag(V)·conj(Ybus·diag(V/|V|)) + conj(diag(I))·diag(V/|V|)
    const CVector ibus = idx.ybus * v;
    const CVector vnorm = v.cwiseQuotient(vm.cast<std::complex<double>>());
    const CMatrix dva = std::complex<double>(0.0, 1.0) * v.asDiagonal() *
                        (CMatrix(ibus.asDiagonal()) - idx.ybus * v.asDiagonal()).conjugate();
    const CMatrix dvm = v.asDiagonal() * (idx.ybus * vnorm.asDiagonal()).conjugate() +
                        CMatrix(ibus.conjugate().asDiagonal()) * vnorm.asDiagonal();

    Eigen::MatrixXd jac(dim, dim);
    for (Eigen::Index r = 0; r < n_ang; ++r) {
      for (Eigen::Index c = 0; c < n_ang; ++c) jac(r, c) = dva(pvpq[r], pvpq[c]).real();
      for (Eigen::Index c = 0; c < n_mag; ++c) jac(r, n_ang + c) = dvm(pvpq[r], pq[c]).real();
    }
    for (Eigen::Index r = 0; r < n_mag; ++r) {
      for (Eigen::Index c = 0; c < n_ang; ++c) jac(n_ang + r, c) = dva(pq[r], pvpq[c]).imag();
      for (Eigen::Index c = 0; c < n_mag; ++c) jac(n_ang + r, n_ang + c) = dvm(pq[r], pq[c]).imag();
    }

    Eigen::FullPivLU<Eigen::MatrixXd> lu(jac);
    if (!lu.isInvertible()) throw Error(Errc::SingularJacobian, "at iteration " + std::to_string(iter));
    const Eigen::VectorXd dx = lu.solve(-f);

    for (Eigen::Index r = 0; r < n_ang; ++r) va(pvpq[r]) += dx(r);
    for (Eigen::Index r = 0; r < n_mag; ++r) vm(pq[r]) += dx(n_ang + r);
    ++iter;
    v = voltage();
    norm = mismatch(v, f);
  }

  for (const auto& [id, k] : idx.bus_index) sol.bus_voltages.emplace(id, v(k));
  for (const auto& line : net.lines) {
    const auto i = idx.bus_index.at(line.from);
    const auto j = idx.bus_index.at(line.to);
    sol.line_currents.emplace(line.id, line.y * (v(i) - v(j)));
  }
  sol.converged = true;
  sol.iterations = iter;
  sol.max_mismatch = norm;
  return sol;
}

}  // namespace areavolt
