#include <doctest.h>

#include <cmath>
#include <random>

#include "hlq/error.hpp"
#include "hlq/numeric.hpp"
#include "hlq/zfun.hpp"

using namespace hlq;

namespace {

// Values frozen from an independent 30-digit evaluation (mpmath siegelz / siegeltheta).
struct Frozen {
  double t, z, theta;
};
constexpr Frozen kFrozen[] = {
    {10.0, -1.5491945461810224, -3.0670743962898953},
    {50.0, -0.34073500595502498, 26.461366070161410},
    {100.0, 2.6926970566644635, 87.972165231787220},
    {200.5, 3.5786759250688392, 246.51685715416363},
    {500.0, 1.4724478510550853, 843.79010058818923},
    {1000.0, 0.99779463752158661, 2034.5464280380316},
    {4999.5, -0.74555633391802730, 14196.227801071779},
    {10000.0, -0.34139472423120856, 31861.923830835821},
    {100000.0, 5.8795924686817650, 433752.02722917078},
};

constexpr double kFirstZeros[] = {14.134725141734694, 21.022039638771555, 25.010857580145689};

double bisect_sign_change(double lo, double hi) {
  double zlo = z_eval(lo).z;
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double zm = z_eval(mid).z;
    if ((zm < 0) == (zlo < 0)) {
      lo = mid;
      zlo = zm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("theta at special points") {
  CHECK(theta(0.0) == 0.0);
  CHECK(theta_exact(0.0) == 0.0);
  CHECK(std::abs(theta(17.845599540410861)) < 1e-10);
  CHECK(theta(100.0) == doctest::Approx(87.972165231787220).epsilon(1e-13));
}

TEST_CASE("theta matches frozen values on both branches") {
  for (const auto& f : kFrozen) {
    CAPTURE(f.t);
    CHECK(std::abs(theta(f.t) - f.theta) <= 1e-10 * std::max(1.0, std::abs(f.theta)));
    if (f.t <= 1e4) CHECK(std::abs(theta_exact(f.t) - f.theta) <= 1e-10 * std::max(1.0, std::abs(f.theta)));
  }
}

TEST_CASE("asymptotic and exact theta agree above the switch") {
  for (double t = 10.0; t < 2000.0; t *= 1.37) {
    CAPTURE(t);
    CHECK(std::abs(theta(t) - theta_exact(t)) < 1e-10);
  }
}

TEST_CASE("theta_prime agrees with a central difference") {
  for (double t : {12.0, 100.0, 3000.0}) {
    const double h = 1e-4;
    CHECK(theta_prime(t) == doctest::Approx((theta(t + h) - theta(t - h)) / (2 * h)).epsilon(1e-7));
  }
}

TEST_CASE("Z matches frozen values within its certified error") {
  for (const auto& f : kFrozen) {
    CAPTURE(f.t);
    const ZSample s = z_eval(f.t, 1e-9);
    CHECK(s.abs_err <= 1e-9);
    CHECK(std::abs(s.z - f.z) <= 1e-9);
  }
}

TEST_CASE("Z at zero height is zeta(1/2)") {
  CHECK(z_eval(0.0).z == doctest::Approx(-1.4603545088095868).epsilon(1e-12));
  const ZetaValue zv = zeta_reference(0.0);
  CHECK(std::abs(zv.value.real() + 1.4603545088095868) < 1e-8);
  CHECK(std::abs(zv.value.imag()) < 1e-8);
}

TEST_CASE("first zeros by bisection on the sign of Z") {
  CHECK(std::abs(z_eval(14.1347251).z) < 1e-6);
  CHECK(std::abs(zeta_reference(14.1347251).value) < 1e-6);
  const double brackets[][2] = {{14.0, 14.5}, {20.8, 21.2}, {24.8, 25.2}};
  for (int i = 0; i < 3; ++i) {
    CHECK(bisect_sign_change(brackets[i][0], brackets[i][1]) == doctest::Approx(kFirstZeros[i]).epsilon(1e-12));
  }
}

TEST_CASE("|Z| equals |zeta| on the critical line") {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> dist(10.0, 5000.0);
  for (double t : {25.0, 250.0, 2500.0}) CHECK(std::abs(std::abs(z_eval(t).z) - std::abs(zeta_reference(t).value)) < 1e-8);
  for (int i = 0; i < 40; ++i) {
    const double t = dist(rng);
    CAPTURE(t);
    CHECK(std::abs(std::abs(z_eval(t).z) - std::abs(zeta_reference(t).value)) < 1e-8);
  }
}

TEST_CASE("Riemann-Siegel stays inside its envelope at every depth") {
  for (int depth = 0; depth <= 4; ++depth) {
    for (double t : {210.0, 777.7, 3001.0, 9000.0}) {
      CAPTURE(depth);
      CAPTURE(t);
      const ZSample rs = z_riemann_siegel(t, depth);
      const ZetaValue ref = zeta_reference(t);
      const double ref_z = z_eval(t, 1e-12, ZConfig{4, 1e9}).z;  // reference path only
      CHECK(std::abs(std::abs(ref_z) - std::abs(ref.value)) < 1e-10);
      CHECK(std::abs(rs.z - ref_z) <= rs.abs_err + ref.abs_err + 1e-12);
    }
  }
}

TEST_CASE("Riemann-Siegel is uncertified below 200") {
  CHECK(std::isinf(z_riemann_siegel(150.0).abs_err));
  CHECK(z_eval(150.0).method == ZMethod::reference);
  CHECK(z_eval(5000.0, 1e-9).method == ZMethod::riemann_siegel);
}

TEST_CASE("correction terms at p = 1/2") {
  CHECK(rs_correction(0, 0.5) == doctest::Approx(0.38268343236508977).epsilon(1e-14));
  CHECK(rs_correction(2, 0.5) == doctest::Approx(0.0051885428302931684).epsilon(1e-12));
  CHECK(rs_correction(4, 0.5) == doctest::Approx(0.00046483389361763383).epsilon(1e-10));
}

TEST_CASE("Z error handling") {
  CHECK_THROWS_WITH_AS(z_eval(1e7, 1e-9), doctest::Contains("precision_unreachable"), Error);
  CHECK_THROWS_AS(z_eval(100.0, 1e-13), Error);
  CHECK_THROWS_AS(z_eval(-1.0), Error);
  CHECK_THROWS_AS(ZConfig({5, 10.0}).validate(), Error);
}
