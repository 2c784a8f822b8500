#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "areavolt/csv.hpp"
#include "areavolt/error.hpp"
#include "areavolt/harness.hpp"
#include "areavolt/io.hpp"

using namespace areavolt;

namespace {

std::size_t count_lines(const std::string& text) { return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')); }

const std::vector<SweepRow>& default_rows() {
  static const auto rows = error_sweep(default_sweep_network(), two_corridor_topology(), default_sweep_splits());
  return rows;
}

}  // namespace

TEST_SUITE("harness") {
  TEST_CASE("published perfect-reduction example") {
    const auto report = run_perfect_reduction();
    INFO(describe(report));
    CHECK(report.passed());
    CHECK_NOTHROW(require_passed(report));
    CHECK(report.margin.alarm);
    CHECK(report.lambda_max_complete == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(describe(report).find("[FAIL]") == std::string::npos);
  }

  TEST_CASE("identical corridor lines") {
    const Phasor y{5.0, -40.0};
    const auto report = perfect_reduction({{y, y, {2.0, -20.0}, {3.0, -25.0}}, {1.0, 0.0}, {0.5, -0.2}});
    INFO(describe(report));
    CHECK(report.passed());
    for (const auto& [bus, w] : report.reduced.weights.gen) CHECK(std::abs(w - 0.5) < 1e-15);
    for (const auto& [bus, w] : report.reduced.weights.load) CHECK(std::abs(w - 0.5) < 1e-15);
    CHECK(*report.margin.apparent_power_index_pct == doctest::Approx(100.0).epsilon(1e-12));
  }

  TEST_CASE("a failed check is reported") {
    auto report = run_perfect_reduction();
    report.checks.push_back({"forced", 1.0, 2.0, 0.01});
    CHECK_FALSE(report.passed());
    REQUIRE(report.first_failure());
    CHECK(report.first_failure()->quantity == "forced");
    try {
      require_passed(report);
      FAIL("expected an assertion failure");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::AssertionFailure);
      CHECK(std::string(e.what()).find("forced") != std::string::npos);
    }
  }

  TEST_CASE("sweep on the default network") {
    const auto& rows = default_rows();
    REQUIRE(rows.size() == default_sweep_splits().size());
    const auto balanced = std::min_element(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
      return std::abs(a.dv_mag) < std::abs(b.dv_mag);
    });
    CHECK(std::abs(balanced->error_pct) <= 0.5);
    CHECK(balanced->p_max_total == doctest::Approx(20.0).epsilon(0.1));
    for (const auto& row : rows) {
      CHECK(row.error_pct <= 1e-3);
      CHECK(row.p_max_total == doctest::Approx(row.p_max_l1 + row.p_max_l2).epsilon(1e-12));
    }
    // The split that loads l1 alone is the most imbalanced and carries a large error.
    CHECK(rows.front().dv_mag < -0.2);
    CHECK(rows.front().error_pct < -5.0);
  }

  TEST_CASE("sweep splits file matches the built-in plan") {
    const auto plan = load_splits(std::string(AREAVOLT_DATA_DIR) + "/sweep_splits.json");
    const auto builtin = default_sweep_splits();
    REQUIRE(plan.splits.size() == builtin.size());
    for (std::size_t i = 0; i < builtin.size(); ++i) {
      REQUIRE(plan.splits[i].size() == 2);
      CHECK(plan.splits[i][0] == doctest::Approx(builtin[i][0]).epsilon(1e-12));
      CHECK(plan.splits[i][1] == doctest::Approx(builtin[i][1]).epsilon(1e-12));
    }
    REQUIRE(plan.base_total_p);
    CHECK(*plan.base_total_p == doctest::Approx(2.0));
  }

  TEST_CASE("parallel and serial sweeps agree") {
    const std::vector<std::vector<double>> splits{{0.7, 0.3}, {0.25, 0.75}, {0.0, 1.0}};
    SweepOptions serial;
    serial.parallel = false;
    const auto a = error_sweep(default_sweep_network(), two_corridor_topology(), splits, serial);
    const auto b = error_sweep(default_sweep_network(), two_corridor_topology(), splits);
    CHECK(a == b);
  }

  TEST_CASE("sweep argument errors") {
    const auto topo = two_corridor_topology();
    const auto net = default_sweep_network();
    CHECK_THROWS_AS(error_sweep(net, topo, {{1.0}}), Error);
    CHECK_THROWS_AS(error_sweep(net, topo, {{-1.0, 2.0}}), Error);
    CHECK_THROWS_AS(error_sweep(net, topo, {{0.0, 0.0}}), Error);
  }

  TEST_CASE("emit_table") {
    SUBCASE("empty") {
      CHECK(emit_table({}, TableFormat::Csv) == std::string(kSweepCsvHeader) + "\n");
      const auto text = emit_table({}, TableFormat::Text);
      CHECK(count_lines(text) == 3);  // names, units, footer
      CHECK(text.find("deg") != std::string::npos);
    }
    SUBCASE("one row") {
      const SweepRow row{9.7, 0.5, 10.2, -0.3, -19.0, 10.6, -3.77358};
      const auto csv = emit_table({row}, TableFormat::Csv);
      CHECK(csv == std::string(kSweepCsvHeader) + "\n9.70000,0.500000,10.2000,-0.300000,-19.0000,10.6000,-3.77358\n");
      const auto text = emit_table({row}, TableFormat::Text);
      CHECK(count_lines(text) == 4);
      CHECK(text.find("%") != std::string::npos);
    }
    SUBCASE("CSV round trip keeps six significant digits") {
      const auto& rows = default_rows();
      const auto csv = emit_table(rows, TableFormat::Csv);
      const auto back = parse_sweep_csv(csv);
      REQUIRE(back.size() == rows.size());
      for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(back[i].p_max_total == doctest::Approx(rows[i].p_max_total).epsilon(1e-5));
        CHECK(back[i].error_pct == doctest::Approx(rows[i].error_pct).epsilon(1e-5));
      }
      CHECK(emit_table(back, TableFormat::Csv) == csv);
    }
    SUBCASE("bad CSV") {
      CHECK_THROWS_AS(parse_sweep_csv("a,b\n"), MalformedRowError);
      CHECK_THROWS_AS(parse_sweep_csv(std::string(kSweepCsvHeader) + "\n1,2,3\n"), MalformedRowError);
    }
  }

  TEST_CASE("sweep output is deterministic") {
    const std::vector<std::vector<double>> splits{{0.9, 0.1}, {0.25, 0.75}};
    const auto a = emit_table(error_sweep(default_sweep_network(), two_corridor_topology(), splits), TableFormat::Csv);
    const auto b = emit_table(error_sweep(default_sweep_network(), two_corridor_topology(), splits), TableFormat::Csv);
    CHECK(a == b);
  }

  TEST_CASE("format_decimal") {
    CHECK(format_decimal(23.3) == "23.3000");
    CHECK(format_decimal(-0.000123456789) == "-0.000123457");
    CHECK(format_decimal(1.0e-12) == "0.0000000000");
    CHECK(format_decimal(-1.0e-12) == "0.0000000000");
    CHECK(format_decimal(123456789.0) == "123456789");
    CHECK(format_decimal(0.0) == "0.00000");
  }
}
