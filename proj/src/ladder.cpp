#include "hlq/ladder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hlq/error.hpp"

namespace hlq {

double F_of(double y, const LadderConstants& k) {
  if (!(y > 0.0)) fail(ErrorKind::domain_error, "F requires y > 0");
  const double h = 0.5 * y;
  return h * std::log(h) + (k.c - std::log(kTwoPi)) * h + k.c0;
}

double F_prime(double y, const LadderConstants& k) {
  if (!(y > 0.0)) fail(ErrorKind::domain_error, "F' requires y > 0");
  return 0.5 * std::log(0.5 * y) - 0.5 * k.a;
}

double F_inverse(double v, const LadderConstants& k, double y_min) {
  if (!(y_min >= kDefaultYMin)) fail(ErrorKind::domain_error, "y_min must be >= 10");
  if (!std::isfinite(v)) fail(ErrorKind::domain_error, "F_inverse needs a finite value");
  const double f_min = F_of(y_min, k);
  if (v < f_min) {
    fail(ErrorKind::domain_error, "value " + format_g17(v) + " lies below F(y_min) = " + format_g17(f_min));
  }
  const double tol = 1e-12 * std::max(1.0, std::abs(v));
  double lo = y_min;
  double hi = 2.0 * y_min;
  while (F_of(hi, k) < v) {
    lo = hi;
    hi *= 2.0;
    if (!std::isfinite(hi)) fail(ErrorKind::no_convergence, "F_inverse bracket overflow");
  }
  // F is convex and increasing here, so Newton from the right end never overshoots.
  double y = hi;
  for (int iter = 0; iter < 200; ++iter) {
    const double r = F_of(y, k) - v;
    if (std::abs(r) <= tol) return y;
    if (r > 0) hi = y; else lo = y;
    double next = y - r / F_prime(y, k);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == y || hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) return next;
    y = next;
  }
  fail(ErrorKind::no_convergence, "F_inverse did not converge in 200 iterations");
}

LadderPoint ladder_point(double T, double mass, const LadderConstants& k) {
  LadderPoint p;
  p.T = T;
  p.mass = mass;
  p.phi = F_inverse(mass, k);
  p.ratio = p.phi / T;
  return p;
}

LadderPoint phi_at(double T, const QuadratureConfig& cfg, MassCheckpoint& ckpt, const LadderConstants& k) {
  if (!(T >= kMinLadderT)) fail(ErrorKind::domain_error, "phi_at requires T >= 100");
  return ladder_point(T, hl_mass(T, cfg, ckpt), k);
}

double chord_tan_alpha(const LadderPoint& p1, const LadderPoint& p2) {
  if (!(p2.T > p1.T)) fail(ErrorKind::domain_error, "chord needs p1.T < p2.T");
  return (p2.phi - p1.phi) / (2.0 * (p2.T - p1.T));
}

}  // namespace hlq
