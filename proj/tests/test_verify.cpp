#include <doctest.h>

#include <cmath>

#include "hlq/error.hpp"
#include "hlq/numeric.hpp"
#include "hlq/verify.hpp"

using namespace hlq;

TEST_CASE("Balasubramanian main term arithmetic") {
  CHECK(balasubramanian_main(1000.0) == doctest::Approx(5224.31).epsilon(1e-6));
  CHECK(balasubramanian_main(100.0) == doctest::Approx(292.17).epsilon(1e-5));
}

TEST_CASE("Balasubramanian residuals stay under T^(1/3 + 0.1)") {
  QuadratureConfig cfg;
  auto ckpt = MassCheckpoint::for_config(cfg);
  for (double T : {100.0, 1000.0, 3000.0}) {
    CAPTURE(T);
    const ResidualReport r = balasubramanian_residual(T, cfg, ckpt);
    CHECK(r.kind == ReportKind::balasubramanian);
    CHECK(r.residual == r.observed - r.predicted);
    CHECK(r.bound == std::pow(T, 1.0 / 3.0 + 0.1));
    CHECK(r.within_bound);
  }
  const ResidualReport r = balasubramanian_residual(1000.0, cfg, ckpt);
  CHECK(r.bound == doctest::Approx(19.95).epsilon(1e-3));

  // Same value from a checkpoint grown along a different path.
  auto other = MassCheckpoint::for_config(cfg);
  hl_mass(2500.0, cfg, other);
  CHECK(balasubramanian_residual(1000.0, cfg, other).residual == r.residual);
  CHECK_THROWS_AS(balasubramanian_residual(99.0, cfg, ckpt), Error);
}

TEST_CASE("TKA leading term") {
  CHECK(tka_leading(0.01) == doctest::Approx(132.56).epsilon(1e-4));
  CHECK(tka_leading(0.01) == doctest::Approx((kEulerGamma - std::log(0.04 * kPi)) / (2 * std::sin(0.01))));
  double prev = INFINITY;
  for (double d = 0.005; d <= 0.1; d += 0.0025) {
    const double v = tka_leading(d);
    CHECK(v < prev);
    prev = v;
  }
  CHECK_THROWS_WITH_AS(tka_leading(0.001), doctest::Contains("domain_error"), Error);
  CHECK_THROWS_AS(tka_leading(0.2), Error);
}

TEST_CASE("TKA residuals and fit") {
  QuadratureConfig cfg;
  const TkaFit fit = tka_fit({0.04, 0.02, 0.01, 0.005}, cfg);
  REQUIRE(fit.reports.size() == 4);
  for (const auto& r : fit.reports) {
    CHECK(r.kind == ReportKind::tka);
    CHECK(r.residual == r.observed - r.predicted);
    CHECK(r.bound > 0.0);
  }
  // The damped integral exceeds the leading term by a constant close to pi.
  CHECK(fit.intercept == doctest::Approx(kPi).epsilon(1e-3));
  double sxy = 0;
  for (const auto& r : fit.reports) sxy += r.residual - (fit.intercept + fit.slope * r.inputs.front().second);
  CHECK(std::abs(sxy) < 1e-12);
  CHECK_THROWS_AS(tka_fit({0.01}, cfg), Error);
}

TEST_CASE("short interval formula at 1e4") {
  QuadratureConfig cfg;
  auto ckpt = MassCheckpoint::for_config(cfg);
  const ResidualReport r = short_interval_check(1e4, 0.01, cfg, ckpt);
  CHECK(r.inputs[2].first == "U");
  CHECK(r.inputs[2].second == doctest::Approx(25.9).epsilon(1e-3));
  CHECK(r.predicted > 0.0);
  CHECK(std::abs(r.residual) < 0.5);
  CHECK(r.bound == doctest::Approx(10.0 * std::pow(1e4, -1.0 / 3.0 + 0.04)));
  CHECK_THROWS_AS(short_interval_check(500.0, 0.01, cfg, ckpt), Error);
  CHECK_THROWS_AS(short_interval_check(1e4, 0.0, cfg, ckpt), Error);
}

TEST_CASE("short interval reduces to the gap identity on a partition interval") {
  QuadratureConfig cfg;
  auto ckpt = MassCheckpoint::for_config(cfg);
  PartitionParams p;
  p.T_start = 3000.0;
  p.count = 1;
  const auto recs = generate(p, cfg, ckpt);
  const LadderPoint lo = phi_at(recs[0].T, cfg, ckpt);
  const LadderPoint hi = phi_at(recs[1].T, cfg, ckpt);
  const double U = recs[1].T - recs[0].T;
  const double predicted = U * (std::log(0.5 * lo.phi) - LadderConstants{}.a) * chord_tan_alpha(lo, hi);
  CHECK(predicted == doctest::Approx(U / *recs[0].predicted_gap).epsilon(1e-12));
}

TEST_CASE("ladder checks") {
  QuadratureConfig cfg;
  auto ckpt = MassCheckpoint::for_config(cfg);
  const auto bands = ladder_checks({1e3, 1e4}, cfg, ckpt);
  REQUIRE(bands.size() == 2);
  CHECK(bands[0].kind == ReportKind::ladder_bounds);
  CHECK(bands[0].within_bound);  // (1.7, 2.0) below 1e4
  CHECK(bands[0].predicted == doctest::Approx(1.85));
  CHECK(bands[1].within_bound);  // (1.9, 2.0) from 1e4
  CHECK(bands[1].predicted == doctest::Approx(1.95));
  CHECK(bands[1].observed > 1.9);
  CHECK(bands[1].observed < 2.0);

  PartitionParams p;
  p.count = 20;
  const auto recs = generate(p, cfg, ckpt);
  const auto inc = ladder_checks({}, cfg, ckpt, {}, recs, 1.0);
  REQUIRE(inc.size() == recs.size() - 1);
  for (const auto& r : inc) {
    CHECK(r.kind == ReportKind::ladder_increment);
    CHECK(r.observed <= 10.0);
    CHECK(r.within_bound);
  }
  CHECK_THROWS_AS(ladder_checks({1e4, 1e3}, cfg, ckpt), Error);
  CHECK_THROWS_AS(ladder_checks({500.0}, cfg, ckpt), Error);
}

TEST_CASE("report JSON layout") {
  ResidualReport r;
  r.kind = ReportKind::short_interval;
  r.inputs = {{"T", 1e4}, {"epsilon", 0.01}};
  r.observed = 3;
  r.predicted = 2;
  r.residual = 1;
  r.bound = 0.5;
  const auto j = to_json(r);
  CHECK(j.dump() ==
        R"({"kind":"short_interval","inputs":{"T":10000.0,"epsilon":0.01},"observed":3.0,"predicted":2.0,)"
        R"("residual":1.0,"bound":0.5,"within_bound":false})");
}
