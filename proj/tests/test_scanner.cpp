#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracle_values.hpp"
#include "xidiv/errors.hpp"
#include "xidiv/scanner.hpp"

using namespace xidiv;

TEST_CASE("critical line zeros on [0, 50]") {
  const NumericConfig cfg;
  const ZeroList z = scan_critical_line(0.0, 50.0, 0.05, cfg);
  REQUIRE(z.zeros.size() == static_cast<std::size_t>(oracle::kZerosBelow50));
  const double expected[] = {oracle::kZero1, oracle::kZero2, oracle::kZero3, oracle::kZero4,
                             oracle::kZero5, oracle::kZero6, oracle::kZero7, oracle::kZero8,
                             oracle::kZero9, oracle::kZero10};
  for (std::size_t i = 0; i < z.zeros.size(); ++i) {
    CHECK(std::abs(z.zeros[i].t - expected[i]) < 1e-8);
    CHECK(z.zeros[i].bracket_width < cfg.abs_tol);
    CHECK(z.zeros[i].route == XiRoute::direct);
  }
  CHECK(z.range_lo == 0.0);
  CHECK(z.range_hi == 50.0);
}

TEST_CASE("scan is independent of thread count") {
  const NumericConfig cfg;
  const ZeroList one = scan_critical_line(0.0, 40.0, 0.05, cfg, XiRoute::direct, 1);
  const ZeroList many = scan_critical_line(0.0, 40.0, 0.05, cfg, XiRoute::direct, 8);
  REQUIRE(one.zeros.size() == many.zeros.size());
  for (std::size_t i = 0; i < one.zeros.size(); ++i) CHECK(one.zeros[i].t == many.zeros[i].t);
}

TEST_CASE("scan argument errors") {
  const NumericConfig cfg;
  CHECK_THROWS_AS(scan_critical_line(30.0, 0.0, 0.1, cfg), ArgumentError);
  CHECK_THROWS_AS(scan_critical_line(0.0, 10.0, 0.0, cfg), ArgumentError);
  CHECK_THROWS_AS(scan_critical_line(-1.0, 10.0, 0.1, cfg), ArgumentError);
  CHECK_THROWS_AS(scan_critical_line(0.0, 10.0, 0.1, cfg, XiRoute::psi_transform), ArgumentError);
  CHECK_THROWS_AS(scan_strip(0.4, 0.9, 0.0, 30.0, 0.05, 0.25, cfg), ArgumentError);
  CHECK_THROWS_AS(scan_strip(0.9, 0.6, 0.0, 30.0, 0.05, 0.25, cfg), ArgumentError);
}

TEST_CASE("two routes count the same zeros below 30") {
  const NumericConfig cfg;
  const auto [direct, eq1] = zero_count_vs_eq1(30.0, cfg);
  CHECK(direct == oracle::kZerosBelow30);
  CHECK(eq1 == oracle::kZerosBelow30);
}

TEST_CASE("samples along the line") {
  const NumericConfig cfg;
  const auto samples = sample_critical_line(0.0, 30.0, 0.1, cfg);
  REQUIRE(samples.size() == 301);
  int changes = 0;
  for (std::size_t i = 1; i < samples.size(); ++i) {
    if ((samples[i - 1].second > 0) != (samples[i].second > 0)) ++changes;
  }
  CHECK(changes == oracle::kZerosBelow30);
}

TEST_CASE("strip census") {
  const NumericConfig cfg;
  const StripCensus c = scan_strip(0.6, 0.9, 0.0, 30.0, 0.05, 0.25, cfg, true);
  CHECK(c.sigma_grid.size() == 7);
  CHECK(c.t_grid.size() == 121);
  CHECK(c.cell_count == 7 * 121);
  CHECK(c.nodes.size() == static_cast<std::size_t>(c.cell_count));
  CHECK(c.min_abs_xi > 0.0);
  CHECK(c.min_abs_xi == doctest::Approx(oracle::kStripMin).epsilon(1e-8));
  CHECK(c.argmin_sigma == doctest::Approx(oracle::kStripArgminSigma));
  CHECK(c.argmin_t == doctest::Approx(oracle::kStripArgminT));

  const StripCensus quiet = scan_strip(0.6, 0.9, 0.0, 30.0, 0.05, 0.25, cfg, false, 3);
  CHECK(quiet.nodes.empty());
  CHECK(quiet.min_abs_xi == c.min_abs_xi);

  const std::vector<double> sig{0.25, 0.5, 0.75};
  const std::vector<double> ts{0.0, 14.134725141734693};
  const StripCensus on_line = strip_census(sig, ts, cfg);
  CHECK(on_line.argmin_sigma == 0.5);
  CHECK(on_line.min_abs_xi < 1e-12);
}
