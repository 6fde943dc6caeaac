#include "hlq/zfun.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "hlq/error.hpp"
#include "hlq/numeric.hpp"
#include "rs_coefficients.hpp"

namespace hlq {
namespace {

using ld = long double;

constexpr ld kPiL = 3.141592653589793238462643383279502884L;
constexpr ld kTwoPiL = 2.0L * kPiL;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr ld kEpsL = std::numeric_limits<ld>::epsilon();

// Absolute error assumed for theta when rotating zeta onto the real axis.
constexpr double kThetaAbsErr = 1e-13;

// Remainder envelopes |R_k(t)| <= d_k t^{-(2k+3)/4}, valid for t >= 200.
constexpr std::array<double, 5> kEnvelope = {0.127, 0.053, 0.011, 0.031, 0.017};
constexpr double kEnvelopeMinT = 200.0;

// B_{2k} for k = 1..15.
constexpr std::array<ld, 15> kBernoulli = {
    1.0L / 6.0L,
    -1.0L / 30.0L,
    1.0L / 42.0L,
    -1.0L / 30.0L,
    5.0L / 66.0L,
    -691.0L / 2730.0L,
    7.0L / 6.0L,
    -3617.0L / 510.0L,
    43867.0L / 798.0L,
    -174611.0L / 330.0L,
    854513.0L / 138.0L,
    -236364091.0L / 2730.0L,
    8553103.0L / 6.0L,
    -23749461029.0L / 870.0L,
    8615841276005.0L / 14322.0L,
};

// Unevaluated sum hi + lo carrying roughly twice double precision.
struct DoubleDouble {
  double hi = 0;
  double lo = 0;
};

DoubleDouble split(ld x) {
  const double hi = static_cast<double>(x);
  return {hi, static_cast<double>(x - static_cast<ld>(hi))};
}

struct LogTable {
  std::vector<DoubleDouble> log_n;  // log(n), index n
  std::vector<double> rsqrt_n;      // n^{-1/2}
  explicit LogTable(std::size_t n_max) : log_n(n_max + 1), rsqrt_n(n_max + 1) {
    for (std::size_t n = 1; n <= n_max; ++n) {
      log_n[n] = split(std::log(static_cast<ld>(n)));
      rsqrt_n[n] = static_cast<double>(1.0L / std::sqrt(static_cast<ld>(n)));
    }
  }
};

const LogTable& log_table() {
  static const LogTable table(8192);
  return table;
}

DoubleDouble log_of(std::size_t n) {
  const auto& tab = log_table();
  return n < tab.log_n.size() ? tab.log_n[n] : split(std::log(static_cast<ld>(n)));
}

double rsqrt_of(std::size_t n) {
  const auto& tab = log_table();
  return n < tab.rsqrt_n.size() ? tab.rsqrt_n[n] : 1.0 / std::sqrt(static_cast<double>(n));
}

constexpr double kTwoPiHi = 6.283185307179586;
constexpr double kTwoPiLo = 2.4492935982947064e-16;

// (base - t * log n) reduced to about (-pi, pi], with t exact and the other
// operands in double-double. Absolute error stays near 1e-15 for t up to 1e7.
double reduced_phase(DoubleDouble base, double t, DoubleDouble log_n) {
  const double p_hi = t * log_n.hi;
  const double p_lo = std::fma(t, log_n.hi, -p_hi) + t * log_n.lo;
  const double s = base.hi - p_hi;
  const double bb = s - base.hi;
  const double e = (base.hi - (s - bb)) + (-p_hi - bb);  // two-sum error
  const double k = std::rint(s / kTwoPiHi);
  const double r = std::fma(-k, kTwoPiHi, s);
  return r + (e + base.lo - p_lo - k * kTwoPiLo);
}


ld theta_asymptotic(ld t) {
  const ld inv = 1.0L / t;
  const ld inv2 = inv * inv;
  // 1/(48t) + 7/(5760t^3) + 31/(80640t^5) + 127/(430080t^7) + 511/(1216512t^9)
  const ld series =
      inv * (1.0L / 48.0L +
             inv2 * (7.0L / 5760.0L +
                     inv2 * (31.0L / 80640.0L + inv2 * (127.0L / 430080.0L + inv2 * (511.0L / 1216512.0L)))));
  return t / 2.0L * std::log(t / kTwoPiL) - t / 2.0L - kPiL / 8.0L + series;
}

ld theta_internal(double t, double t_switch) {
  if (t < t_switch) return static_cast<ld>(theta_exact(t));
  return theta_asymptotic(static_cast<ld>(t));
}

double remainder_bound(double t, int depth) {
  return kEnvelope[depth] * std::pow(t, -(2.0 * depth + 3.0) / 4.0);
}

double main_sum_rounding(std::size_t n_terms, ld theta_value) {
  const double weight = 2.0 * 2.0 * std::sqrt(static_cast<double>(n_terms));
  return weight * (4.0 * kEps + 4.0 * static_cast<double>(std::abs(theta_value) * kEpsL)) + 1e-15;
}

}  // namespace

void ZConfig::validate() const {
  if (correction_depth < 0 || correction_depth > detail::kMaxCorrectionDepth) {
    fail(ErrorKind::domain_error, "correction depth must be in [0, 4]");
  }
  if (!(t_switch >= 2.0 * kPi) || !std::isfinite(t_switch)) {
    fail(ErrorKind::domain_error, "t_switch must be at least 2 pi");
  }
}

double theta_exact(double t) {
  if (!(t >= 0.0)) fail(ErrorKind::domain_error, "theta requires t >= 0");
  using cl = std::complex<ld>;
  const cl z(0.25L, static_cast<ld>(t) / 2.0L);
  // Im log Gamma(z) = Im log Gamma(z + m) - sum_{j<m} arg(z + j); every z + j
  // lies in the right half plane, so principal arguments add up continuously.
  constexpr int kShift = 16;
  ld arg_sum = 0;
  for (int j = 0; j < kShift; ++j) arg_sum += std::arg(z + static_cast<ld>(j));
  const cl w = z + static_cast<ld>(kShift);
  const cl log_w = std::log(w);
  cl stirling = (w - 0.5L) * log_w - w;
  cl w_pow = w;
  const cl w2 = w * w;
  for (int k = 1; k <= 12; ++k) {
    stirling += kBernoulli[k - 1] / (static_cast<ld>(2 * k) * static_cast<ld>(2 * k - 1)) / w_pow;
    w_pow *= w2;
  }
  const ld im_lngamma = stirling.imag() - arg_sum;
  return static_cast<double>(im_lngamma - static_cast<ld>(t) / 2.0L * std::log(kPiL));
}

double theta(double t, double t_switch) {
  if (!(t >= 0.0)) fail(ErrorKind::domain_error, "theta requires t >= 0");
  return static_cast<double>(theta_internal(t, t_switch));
}

double theta_prime(double t) {
  if (!(t >= 0.0)) fail(ErrorKind::domain_error, "theta requires t >= 0");
  if (t >= 10.0) {
    const double inv2 = 1.0 / (t * t);
    return 0.5 * std::log(t / kTwoPi) - inv2 * (1.0 / 48.0 + inv2 * (7.0 / 1920.0 + inv2 * (31.0 / 16128.0)));
  }
  const double h = 1e-5;
  const double lo = std::max(0.0, t - h);
  return (theta_exact(t + h) - theta_exact(lo)) / (t + h - lo);
}

ZetaValue zeta_reference(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) fail(ErrorKind::domain_error, "zeta_reference requires t >= 0");
  using cl = std::complex<ld>;
  const cl s(0.5L, static_cast<ld>(t));
  std::size_t n_cut = 20 + static_cast<std::size_t>(std::ceil(0.4 * t));

  for (int attempt = 0; attempt < 8; ++attempt) {
    CompensatedSum<double> re, im;
    for (std::size_t n = 1; n < n_cut; ++n) {
      const double phase = reduced_phase({}, t, log_of(n));  // -t log n
      const double w = rsqrt_of(n);
      re.add(w * std::cos(phase));
      im.add(w * std::sin(phase));
    }
    const double cut_phase = reduced_phase({}, t, log_of(n_cut));
    const cl cut_pow = std::polar(1.0L / std::sqrt(static_cast<ld>(n_cut)), static_cast<ld>(cut_phase));  // N^{-s}
    const ld n_ld = static_cast<ld>(n_cut);

    cl total(re.value(), im.value());
    total += n_ld * cut_pow / (s - 1.0L);
    total += 0.5L * cut_pow;

    // Euler-Maclaurin corrections T_k = B_2k/(2k)! s(s+1)...(s+2k-2) N^{-s-2k+1}.
    cl rising = s;
    ld factorial = 2.0L;  // (2k)!
    ld n_pow = 1.0L / n_ld;  // N^{-(2k-1)}
    double bound = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= static_cast<int>(kBernoulli.size()); ++k) {
      const cl term = kBernoulli[k - 1] / factorial * rising * cut_pow * n_pow;
      // Magnitude of the next term decides whether to stop here.
      const cl next_rising = rising * (s + static_cast<ld>(2 * k - 1)) * (s + static_cast<ld>(2 * k));
      total += term;
      if (k < static_cast<int>(kBernoulli.size())) {
        const ld next_fact = factorial * (2 * k + 1) * (2 * k + 2);
        const ld next_mag = std::abs(kBernoulli[k] / next_fact * next_rising) * std::abs(cut_pow) * n_pow / (n_ld * n_ld);
        const ld envelope = std::abs(s + static_cast<ld>(2 * k + 1)) / (0.5L + 2 * k + 1);
        bound = static_cast<double>(envelope * next_mag);
        if (bound < 1e-16) break;
        rising = next_rising;
        factorial = next_fact;
        n_pow /= n_ld * n_ld;
      }
    }
    if (bound <= 1e-12) {
      const double sqrt_n = std::sqrt(static_cast<double>(n_cut));
      const double rounding = 2.0 * sqrt_n * (8.0 * kEps + 4.0 * kEps) +
                              4.0 * kEps * static_cast<double>(std::abs(total));
      return {std::complex<double>(static_cast<double>(total.real()), static_cast<double>(total.imag())),
              bound + rounding};
    }
    n_cut += n_cut / 2;
  }
  fail(ErrorKind::no_convergence, "Euler-Maclaurin remainder did not reach 1e-12");
}

ZSample z_riemann_siegel(double t, int correction_depth) {
  if (!(t >= kTwoPi) || !std::isfinite(t)) fail(ErrorKind::domain_error, "Riemann-Siegel needs t >= 2 pi");
  if (correction_depth < 0 || correction_depth > detail::kMaxCorrectionDepth) {
    fail(ErrorKind::domain_error, "correction depth must be in [0, 4]");
  }
  const ld tl = t;
  const ld th = theta_asymptotic(tl);
  const ld a = std::sqrt(tl / kTwoPiL);
  const auto n_terms = static_cast<std::size_t>(std::floor(a));
  const double p = static_cast<double>(a - static_cast<ld>(n_terms));

  const DoubleDouble th_dd = split(th);
  double sum = 0;
  for (std::size_t n = 1; n <= n_terms; ++n) {
    sum += rsqrt_of(n) * std::cos(reduced_phase(th_dd, t, log_of(n)));
  }

  std::array<double, detail::kMaxCorrectionDepth + 1> c{};
  detail::rs_corrections(p, correction_depth, c);
  const double u = std::sqrt(static_cast<double>(a));  // (t/2pi)^{1/4}
  const double inv_a = 1.0 / static_cast<double>(a);   // (t/2pi)^{-1/2}
  double corr = 0;
  for (int k = correction_depth; k >= 0; --k) corr = corr * inv_a + c[k];
  const double sign = (n_terms % 2 == 1) ? 1.0 : -1.0;  // (-1)^{N-1}

  ZSample out;
  out.t = t;
  out.z = 2.0 * sum + sign * corr / u;
  out.method = ZMethod::riemann_siegel;
  out.abs_err = t >= kEnvelopeMinT ? remainder_bound(t, correction_depth) + main_sum_rounding(n_terms, th)
                                 : std::numeric_limits<double>::infinity();
  return out;
}

ZSample z_eval(double t, double target_abs_err, const ZConfig& cfg) {
  if (!(t >= 0.0) || !std::isfinite(t)) fail(ErrorKind::domain_error, "z_eval requires finite t >= 0");
  if (!(target_abs_err >= 1e-12)) fail(ErrorKind::domain_error, "target_abs_err must be >= 1e-12");
  cfg.validate();

  if (t >= cfg.t_switch && t >= kEnvelopeMinT) {
    // Decide on the envelope before paying for the main sum.
    const double n_terms = std::floor(std::sqrt(t / kTwoPi));
    const double envelope = remainder_bound(t, cfg.correction_depth) +
                            main_sum_rounding(static_cast<std::size_t>(n_terms), static_cast<ld>(t) * std::log(t));
    if (envelope <= target_abs_err) return z_riemann_siegel(t, cfg.correction_depth);
  }
  if (t > kReferenceMaxT) {
    fail(ErrorKind::precision_unreachable,
         "cannot certify |error| <= " + format_g17(target_abs_err) + " at t = " + format_g17(t) +
             " with correction depth " + std::to_string(cfg.correction_depth));
  }
  const ZetaValue zeta = zeta_reference(t);
  const ld th = theta_internal(t, cfg.t_switch);
  const std::complex<double> rot = std::polar(1.0, reduced_phase(split(th), 0.0, {}));
  const double zeta_abs = std::abs(zeta.value);
  ZSample out;
  out.t = t;
  out.z = (rot * zeta.value).real();
  out.abs_err = zeta.abs_err + zeta_abs * (kThetaAbsErr + 4.0 * kEps);
  out.method = ZMethod::reference;
  if (out.abs_err > target_abs_err) {
    fail(ErrorKind::precision_unreachable, "reference error bound exceeds target at t = " + format_g17(t));
  }
  return out;
}

}  // namespace hlq
