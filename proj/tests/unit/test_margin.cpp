#include <doctest.h>

#include <cmath>

#include "areavolt/error.hpp"
#include "areavolt/harness.hpp"
#include "areavolt/margin.hpp"
#include "areavolt/reduction.hpp"
#include "support/oracles.hpp"

using namespace areavolt;

namespace {

template <typename F>
Errc code_of(F&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return Errc::AssertionFailure;
}

/// Reduced state built directly from voltages and a corridor admittance.
ReducedSystem reduced(Phasor vg, Phasor vl, Phasor y) {
  ReducedSystem rs;
  rs.v_gen = vg;
  rs.v_load = vl;
  rs.v_across = vg - vl;
  rs.y_corridor = y;
  rs.current = y * rs.v_across;
  if (std::abs(rs.current) > kZeroCurrent) {
    rs.z_thevenin = rs.v_across / rs.current;
    rs.z_load = vl / rs.current;
  }
  return rs;
}

ReducedSystem table1_state() { return reduced({1, 0}, {0.5, -0.2}, {15.2, -76.3}); }

}  // namespace

TEST_SUITE("margin") {
  TEST_CASE("two-corridor example sits at the collapse point") {
    const auto rs = table1_state();
    CHECK(apparent_power_index(rs) == doctest::Approx(100.0).epsilon(1e-12));
    CHECK(impedance_match_index(rs) == doctest::Approx(100.0).epsilon(1e-12));
    CHECK(voltage_ratio_index(rs) == doctest::Approx(1.0).epsilon(1e-12));
    const auto report = evaluate(rs);
    CHECK(report.alarm);
    CHECK(report.chosen_pct() == doctest::Approx(100.0));
  }

  TEST_CASE("collinear voltages") {
    ReducedSystem rs = reduced({1, 0}, {0.9, 0}, {1, -10});
    CHECK(apparent_power_index(rs) == doctest::Approx(100.0 * 0.1 / 0.9));
    CHECK(voltage_ratio_index(reduced({1, 0}, {0.5, 0}, {1, -10})) == doctest::Approx(1.0));
  }

  TEST_CASE("ideal corridor") {
    ReducedSystem rs = table1_state();
    rs.z_thevenin = Phasor{};
    CHECK(impedance_match_index(rs) == 0.0);
  }

  TEST_CASE("degenerate states") {
    const auto no_load = reduced({1, 0}, {1, 0}, {1, -10});
    CHECK(code_of([&] { apparent_power_index(no_load); }) == Errc::ZeroCurrent);
    CHECK(code_of([&] { impedance_match_index(no_load); }) == Errc::ZeroCurrent);
    CHECK(code_of([&] { voltage_ratio_index(no_load); }) == Errc::DegenerateVoltageDifference);
    const auto shorted = reduced({1, 0}, {0, 0}, {1, -10});
    CHECK(code_of([&] { apparent_power_index(shorted); }) == Errc::ZeroLoadVoltage);
    CHECK(code_of([&] { impedance_match_index(shorted); }) == Errc::ZeroLoadImpedance);
  }

  TEST_CASE("alarm threshold is inclusive") {
    // |V_across| / |V_load| = 0.799 and 0.8 on collinear voltages.
    const double below = 0.799;
    const auto rs_below = reduced({1, 0}, {1.0 / (1.0 + below), 0}, {1, -10});
    const auto r1 = evaluate(rs_below, {IndexKind::ApparentPower, 80.0});
    CHECK(*r1.apparent_power_index_pct == doctest::Approx(79.9));
    CHECK_FALSE(r1.alarm);
    const auto rs_at = reduced({1, 0}, {1.0 / 1.8, 0}, {1, -10});
    const double at = apparent_power_index(rs_at);
    CHECK(at == doctest::Approx(80.0));
    CHECK(evaluate(rs_at, {IndexKind::ApparentPower, at}).alarm);
    CHECK_FALSE(evaluate(rs_at, {IndexKind::ApparentPower, std::nextafter(at, 200.0)}).alarm);
  }

  TEST_CASE("voltage ratio alarm uses the reciprocal scale") {
    const auto rs = reduced({1, 0}, {1.0 / 1.85, 0}, {1, -10});  // ratio 1/0.85
    const auto r = evaluate(rs, {IndexKind::VoltageRatio, 80.0});
    CHECK(r.chosen_pct() == doctest::Approx(85.0));
    CHECK(r.alarm);
    CHECK_FALSE(evaluate(rs, {IndexKind::VoltageRatio, 90.0}).alarm);
  }

  TEST_CASE("index choice parses") {
    CHECK(parse_index_kind("apparent") == IndexKind::ApparentPower);
    CHECK(parse_index_kind("impedance") == IndexKind::ImpedanceMatch);
    CHECK(parse_index_kind("vratio") == IndexKind::VoltageRatio);
    CHECK(to_string(IndexKind::VoltageRatio) == "vratio");
    CHECK(code_of([] { parse_index_kind("thevenin"); }) == Errc::InvalidArgument);
  }

  TEST_CASE("a failing index is left empty unless chosen") {
    ReducedSystem rs = table1_state();
    rs.z_thevenin.reset();
    rs.z_load.reset();
    const auto r = evaluate(rs, {IndexKind::ApparentPower, 80.0});
    CHECK_FALSE(r.impedance_match_pct);
    CHECK(r.apparent_power_index_pct);
    CHECK(code_of([&] { evaluate(rs, {IndexKind::ImpedanceMatch, 80.0}); }) == Errc::ZeroCurrent);
  }

  TEST_CASE("index identities and rotation invariance on random states") {
    oracle::Sampler s(41);
    for (int i = 0; i < 1000; ++i) {
      const Phasor vg = s.phasor(0.9, 1.1);
      const Phasor vl = s.phasor(0.3, 1.1);
      const Phasor y = s.line_admittance();
      const auto rs = reduced(vg, vl, y);
      const double a = apparent_power_index(rs);
      CHECK(std::abs(a - 100.0 * std::abs(vg - vl) / std::abs(vl)) <= 1e-12 * a);
      CHECK(a >= 0.0);

      const Phasor rot = std::polar(1.0, s.uniform(-3.14159, 3.14159));
      ReducedSystem turned = rs;
      turned.v_gen *= rot;
      turned.v_load *= rot;
      turned.v_across *= rot;
      turned.current *= rot;
      const double z = impedance_match_index(rs);
      const double v = voltage_ratio_index(rs);
      CHECK(std::abs(apparent_power_index(turned) - a) <= 1e-12 * a);
      CHECK(std::abs(impedance_match_index(turned) - z) <= 1e-12 * z);
      CHECK(std::abs(voltage_ratio_index(turned) - v) <= 1e-12 * v);
    }
  }
}
