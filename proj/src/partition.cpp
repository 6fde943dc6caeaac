#include "hlq/partition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hlq/error.hpp"
#include "hlq/numeric.hpp"

namespace hlq {
namespace {

constexpr double kMinZ2Guess = 0.01;
constexpr int kMaxIterations = 200;

double z_squared(double t, const QuadratureConfig& cfg) {
  const double z = z_eval(t, std::clamp(0.1 * cfg.rel_tol, 1e-12, 1e-6), cfg.z).z;
  return z * z;
}

// Solves int_{from}^{T} Z^2 = target for T > from. The mass is strictly
// increasing in T, so a bracket plus Newton (derivative Z^2) with bisection
// fallback always converges.
double solve_mass_step(double from, double target, const QuadratureConfig& cfg) {
  const double tol = 1e-11 * std::max(1.0, target);
  auto residual = [&](double T) { return hl_mass_between(from, T, cfg) - target; };

  double lo = from;
  double step = target / std::max(z_squared(from, cfg), kMinZ2Guess);
  double hi = from + step;
  if (!(hi > from)) fail(ErrorKind::domain_error, "mass step is below double resolution at T = " + format_g17(from));
  double r_hi = residual(hi);
  double r_lo = -target;
  while (r_hi < 0) {
    lo = hi;
    r_lo = r_hi;
    step *= 2.0;
    hi = from + step;
    r_hi = residual(hi);
  }
  if (std::abs(r_hi) <= tol) return hi;

  // Regula falsi start, then Newton.
  double T = lo + (hi - lo) * (-r_lo) / (r_hi - r_lo);
  for (int iter = 0; iter < kMaxIterations; ++iter) {
    if (!(T > lo && T < hi)) T = 0.5 * (lo + hi);
    const double r = residual(T);
    if (std::abs(r) <= tol) return T;
    if (r < 0) lo = T; else hi = T;
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) return T;
    const double d = z_squared(T, cfg);
    double next = d > 0 ? T - r / d : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    T = next;
  }
  fail(ErrorKind::no_convergence, "mass step did not converge from T = " + format_g17(from));
}

}  // namespace

void PartitionParams::validate() const {
  if (!(omega >= 1e-30 && omega <= 1e6)) fail(ErrorKind::domain_error, "omega must be in [1e-30, 1e6]");
  if (!(tau >= 0.0 && tau < omega)) fail(ErrorKind::domain_error, "tau must satisfy 0 <= tau < omega");
  if (!(T_start >= kMinLadderT) || !std::isfinite(T_start)) fail(ErrorKind::domain_error, "T_start must be >= 100");
  if (count < 1) fail(ErrorKind::domain_error, "count must be >= 1");
  if (!(epsilon > 0.0 && epsilon <= 0.05)) fail(ErrorKind::domain_error, "epsilon must be in (0, 0.05]");
}

Seed seed_point(const PartitionParams& params, const QuadratureConfig& cfg, MassCheckpoint& ckpt) {
  params.validate();
  const double I0 = hl_mass(params.T_start, cfg, ckpt);
  const double q = (I0 - params.tau) / params.omega;
  if (!(std::abs(q) < 9.0e18)) fail(ErrorKind::domain_error, "sequence index overflows; omega too small for absolute frame");
  const double nearest = std::nearbyint(q);
  const double nu = std::abs(q - nearest) <= 1e-12 * std::max(1.0, std::abs(q)) ? nearest : std::ceil(q);

  Seed seed;
  seed.nu0 = static_cast<std::int64_t>(nu);
  const double lattice = params.omega * nu + params.tau;
  const double delta = lattice - I0;
  if (delta <= 1e-12 * std::max(1.0, std::abs(lattice))) {
    seed.T = params.T_start;
    return seed;
  }
  seed.T = solve_mass_step(params.T_start, delta, cfg);
  return seed;
}

double next_point(double T_prev, double omega, const QuadratureConfig& cfg) {
  if (!(T_prev >= kMinLadderT) || !std::isfinite(T_prev)) fail(ErrorKind::domain_error, "next_point needs T_prev >= 100");
  if (!(omega > 0.0) || !std::isfinite(omega)) fail(ErrorKind::domain_error, "next_point needs omega > 0");
  cfg.validate();
  return solve_mass_step(T_prev, omega, cfg);
}

double predicted_gap(const LadderPoint& lo, const LadderPoint& hi, double omega, const LadderConstants& k) {
  const double slope = chord_tan_alpha(lo, hi);
  const double denom = (std::log(0.5 * lo.phi) - k.a) * slope;
  if (!(denom > 0.0)) fail(ErrorKind::domain_error, "gap formula denominator is not positive");
  return omega / denom;
}

std::vector<PartitionRecord> generate(const PartitionParams& params, const QuadratureConfig& cfg,
                                      MassCheckpoint& ckpt, const LadderConstants& k) {
  params.validate();
  cfg.validate();
  const Seed seed = seed_point(params, cfg, ckpt);
  const auto n = static_cast<std::size_t>(params.count);

  std::vector<double> T(n + 1);
  T[0] = seed.T;
  for (std::size_t i = 1; i <= n; ++i) T[i] = next_point(T[i - 1], params.omega, cfg);

  std::vector<LadderPoint> ladder(n + 1);
  for (std::size_t i = 0; i <= n; ++i) ladder[i] = phi_at(T[i], cfg, ckpt, k);

  const QuadratureConfig check = cfg.recheck();
  std::vector<double> masses(n);
  parallel_for(n, cfg.jobs, [&](std::size_t i) { masses[i] = hl_mass_between(T[i], T[i + 1], check); });

  std::vector<PartitionRecord> out(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    auto& r = out[i];
    r.nu = seed.nu0 + static_cast<std::int64_t>(i);
    r.T = T[i];
    r.phi = ladder[i].phi;
    if (i == n) break;
    const double gap = T[i + 1] - T[i];
    r.gap = gap;
    r.mass = masses[i];
    r.tan_alpha = chord_tan_alpha(ladder[i], ladder[i + 1]);
    r.predicted_gap = predicted_gap(ladder[i], ladder[i + 1], params.omega, k);
    r.rel_gap_err = std::abs(gap - *r.predicted_gap) / gap;
  }
  return out;
}

MeanGapStat mean_gap_stat(const std::vector<PartitionRecord>& records, double omega, double epsilon) {
  if (!(omega > 0.0)) fail(ErrorKind::domain_error, "omega must be positive");
  if (!(epsilon > 0.0 && epsilon <= 0.05)) fail(ErrorKind::domain_error, "epsilon must be in (0, 0.05]");
  if (records.size() < 2) fail(ErrorKind::insufficient_span, "need at least two points");
  MeanGapStat s;
  const double anchor = records.front().T;
  s.u0 = std::pow(anchor, 1.0 / 3.0 + 2.0 * epsilon);
  for (std::size_t i = 1; i < records.size(); ++i) {
    const double span = records[i].T - anchor;
    if (span >= s.u0) {
      s.n0 = static_cast<std::int64_t>(i);
      s.span = span;
      break;
    }
  }
  if (s.n0 == 0) {
    fail(ErrorKind::insufficient_span, "records span " + format_g17(records.back().T - anchor) + " < U0 = " +
                                           format_g17(s.u0));
  }
  s.mean_gap = s.span / static_cast<double>(s.n0);
  s.predicted = omega / std::log(anchor);
  s.ratio = s.mean_gap / s.predicted;
  return s;
}

PlanckSequence planck_sequence(double T0, std::int64_t count, const QuadratureConfig& cfg) {
  cfg.validate();
  if (!(T0 >= 1e3 && T0 <= 1e5)) fail(ErrorKind::domain_error, "T0 must be in [1e3, 1e5]");
  if (count < 1 || count > 1'000'000) fail(ErrorKind::domain_error, "count must be in [1, 1e6]");
  constexpr double kTarget = 1e-10;
  constexpr long double kReevaluateAfter = 1e-6L;
  constexpr double kNearZero = 1e-5;

  PlanckSequence seq;
  seq.T0 = T0;
  seq.omega = kPlanckH / 3.141592653589793238462643383279502884L;
  const double z0 = z_eval(T0, kTarget, cfg.z).z;
  seq.z_evaluations = 1;
  if (!(std::abs(z0) >= 0.5)) {
    fail(ErrorKind::domain_error, "|Z(T0)| = " + format_g17(std::abs(z0)) + " < 0.5; start away from a zero");
  }
  long double z2 = static_cast<long double>(z0) * z0;
  CompensatedSum<long double> offset;
  long double since_eval = 0;
  seq.steps.reserve(static_cast<std::size_t>(count));
  for (std::int64_t i = 0; i < count; ++i) {
    if (since_eval > kReevaluateAfter) {
      const double z = z_eval(T0 + static_cast<double>(offset.value()), kTarget, cfg.z).z;
      ++seq.z_evaluations;
      if (std::abs(z) < kNearZero) fail(ErrorKind::near_zero_abort, "|Z| fell below 1e-5 during the walk");
      z2 = static_cast<long double>(z) * z;
      since_eval = 0;
    }
    PlanckStep s;
    s.offset = offset.value();
    s.z2 = z2;
    s.gap = seq.omega / z2;
    s.mass = z2 * s.gap;
    seq.steps.push_back(s);
    offset.add(s.gap);
    since_eval += s.gap;
  }
  return seq;
}

}  // namespace hlq
