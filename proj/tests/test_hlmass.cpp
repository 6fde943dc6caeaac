#include <doctest.h>

#include <cmath>

#include "hlq/error.hpp"
#include "hlq/gram.hpp"
#include "hlq/hlmass.hpp"
#include "hlq/numeric.hpp"
#include "hlq/zfun.hpp"

using namespace hlq;

namespace {

// Composite Simpson on |zeta(1/2 + it)|^2 from the Euler-Maclaurin reference;
// shares nothing with the production quadrature but the reference sum.
double simpson_oracle(double a, double b, double h) {
  const long n = std::lround((b - a) / h);
  auto f = [](double t) { return std::norm(zeta_reference(t).value); };
  CompensatedSum<double> s;
  s += f(a) + f(b);
  for (long i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s.value() * h / 3.0;
}

}  // namespace

TEST_CASE("mass of empty intervals") {
  QuadratureConfig cfg;
  auto ckpt = MassCheckpoint::for_config(cfg);
  CHECK(hl_mass(0.0, cfg, ckpt) == 0.0);
  CHECK(hl_mass_between(123.4, 123.4, cfg) == 0.0);
}

TEST_CASE("mass agrees with an independent Simpson oracle") {
  QuadratureConfig cfg;
  auto ckpt = MassCheckpoint::for_config(cfg);
  const double simpson_100 = simpson_oracle(0.0, 100.0, 1e-3);
  const double i100 = hl_mass(100.0, cfg, ckpt);
  CHECK(std::abs(i100 - simpson_100) < 1e-6);
  CHECK(std::abs(i100 - 292.17) < 15.0);
  const double simpson_tail = simpson_oracle(100.0, 200.0, 1e-3);
  CHECK(std::abs(hl_mass(200.0, cfg, ckpt) - (simpson_100 + simpson_tail)) < 2e-6);
}

TEST_CASE("mass matches frozen 30-digit quadrature") {
  // mpmath quad of siegelz^2 on fine subdivisions.
  QuadratureConfig cfg;
  auto ckpt = MassCheckpoint::for_config(cfg);
  CHECK(hl_mass(100.0, cfg, ckpt) == doctest::Approx(295.63509905471913).epsilon(1e-11));
  CHECK(hl_mass_between(1000.0, 1010.0, cfg) == doctest::Approx(96.471800894542734).epsilon(1e-9));
}

TEST_CASE("mass at 1000 sits near the main term") {
  QuadratureConfig cfg;
  auto ckpt = MassCheckpoint::for_config(cfg);
  const double I = hl_mass(1000.0, cfg, ckpt);
  CHECK(I == doctest::Approx(5212.507763338030).epsilon(1e-9));
  CHECK(std::abs(I - 5224.31) < 40.0);
}

TEST_CASE("additivity and history independence") {
  QuadratureConfig cfg;
  auto a = MassCheckpoint::for_config(cfg);
  auto b = MassCheckpoint::for_config(cfg);
  const double direct = hl_mass_between(0.0, 100.0, cfg);
  const double cumulative = hl_mass(100.0, cfg, a);
  CHECK(std::abs(direct - cumulative) <= 2e-9 * cumulative);

  // Different query orders land on bit-identical values.
  const double x1 = hl_mass(57.25, cfg, a);
  hl_mass(80.0, cfg, b);
  hl_mass(12.5, cfg, b);
  const double x2 = hl_mass(57.25, cfg, b);
  CHECK(x1 == x2);
  CHECK(hl_mass(100.0, cfg, b) == cumulative);

  const double split = hl_mass_between(0.0, 40.0, cfg) + hl_mass_between(40.0, 100.0, cfg);
  CHECK(std::abs(split - direct) <= 2e-9 * direct);
}

TEST_CASE("mass is independent of the worker count") {
  QuadratureConfig one;
  QuadratureConfig many;
  many.jobs = 6;
  auto a = MassCheckpoint::for_config(one);
  auto b = MassCheckpoint::for_config(many);
  CHECK(hl_mass(777.7, one, a) == hl_mass(777.7, many, b));
  CHECK(a == b);
}

TEST_CASE("mass between the first two Gram points is positive") {
  QuadratureConfig cfg;
  CHECK(hl_mass_between(gram_height(0), gram_height(1), cfg) > 0.0);
}

TEST_CASE("mass is monotone and tracks Z^2 as a derivative") {
  QuadratureConfig cfg;
  auto ckpt = MassCheckpoint::for_config(cfg);
  double prev = 0;
  for (double T = 5.0; T <= 300.0; T += 7.3) {
    const double I = hl_mass(T, cfg, ckpt);
    CHECK(I > prev);
    prev = I;
  }
  const double h = 1e-3, T = 250.0;
  const double deriv = hl_mass_between(T - h, T + h, cfg) / (2 * h);
  const double z = z_eval(T).z;
  CHECK(deriv == doctest::Approx(z * z).epsilon(1e-5));
}

TEST_CASE("recheck uses a different layout but agrees") {
  QuadratureConfig cfg;
  const QuadratureConfig r = cfg.recheck();
  CHECK(r.nodes_per_oscillation != cfg.nodes_per_oscillation);
  CHECK(r.panel_fraction != cfg.panel_fraction);
  const double a = hl_mass_between(1000.0, 1010.0, cfg);
  const double b = hl_mass_between(1000.0, 1010.0, r);
  CHECK(std::abs(a - b) <= 1e-9 * a);
}

TEST_CASE("checkpoint conflicts") {
  QuadratureConfig cfg;
  auto ckpt = MassCheckpoint::for_config(cfg);
  QuadratureConfig other = cfg;
  other.z.correction_depth = 3;
  CHECK_THROWS_WITH_AS(hl_mass(10.0, other, ckpt), doctest::Contains("checkpoint_conflict"), Error);
  QuadratureConfig stricter = cfg;
  stricter.rel_tol = 1e-11;
  CHECK_THROWS_WITH_AS(hl_mass(10.0, stricter, ckpt), doctest::Contains("checkpoint_conflict"), Error);
  QuadratureConfig looser = cfg;
  looser.rel_tol = 1e-6;
  CHECK_NOTHROW(hl_mass(10.0, looser, ckpt));
}

TEST_CASE("domain errors") {
  QuadratureConfig cfg;
  auto ckpt = MassCheckpoint::for_config(cfg);
  CHECK_THROWS_AS(hl_mass(-1.0, cfg, ckpt), Error);
  CHECK_THROWS_AS(hl_mass_between(5.0, 4.0, cfg), Error);
  QuadratureConfig bad;
  bad.rel_tol = 1e-2;
  CHECK_THROWS_AS(bad.validate(), Error);
  CHECK_THROWS_AS(damped_mass(0.9, cfg), Error);
}

TEST_CASE("damped mass") {
  QuadratureConfig cfg;
  const DampedMass d = damped_mass(0.5, cfg);
  CHECK(d.value > 0.0);
  CHECK(d.tail_bound < 1e-8);
  QuadratureConfig loose;
  loose.rel_tol = 1e-7;
  CHECK(std::abs(damped_mass(0.5, loose).value - d.value) < 1e-8);

  double prev = INFINITY;
  for (double delta : {0.005, 0.01, 0.02, 0.05}) {
    const double v = damped_mass(delta, cfg).value;
    CHECK(v < prev);
    prev = v;
  }
  // Leading term 132.57; the gap to it tends to pi as delta shrinks.
  const DampedMass d01 = damped_mass(0.01, cfg);
  CHECK(d01.value == doctest::Approx(135.6984127).epsilon(1e-8));
  CHECK(z2_tail_constant() > 1.0);
}
