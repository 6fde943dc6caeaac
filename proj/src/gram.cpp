#include "hlq/gram.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hlq/error.hpp"
#include "hlq/numeric.hpp"
#include "hlq/zfun.hpp"

namespace hlq {
namespace {

// theta has its minimum near t = 6.2898 and is increasing beyond it;
// theta(6.5) < -pi, so every admissible target lies to the right.
constexpr double kBranchStart = 6.5;

void check_tau(double tau_bar) {
  if (!(std::abs(tau_bar) <= kPi)) fail(ErrorKind::domain_error, "tau_bar must lie in [-pi, pi]");
}

}  // namespace

double gram_height(std::int64_t nu, double tau_bar) {
  if (nu < 0) fail(ErrorKind::domain_error, "Gram index must be >= 0");
  check_tau(tau_bar);
  const double target = static_cast<double>(nu) * kPi + tau_bar;
  const double tol = 1e-12 * std::max(1.0, std::abs(target));

  double lo = kBranchStart;
  double hi = 2.0 * kTwoPi;
  while (theta(hi) < target) {
    lo = hi;
    hi *= 2.0;
  }
  double t = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    const double r = theta(t) - target;
    if (std::abs(r) <= tol) return t - r / theta_prime(t);  // one polishing step
    if (r < 0) lo = t; else hi = t;
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) return t;
    double next = t - r / theta_prime(t);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    t = next;
  }
  fail(ErrorKind::no_convergence, "Gram point iteration did not converge");
}

GramRecord gram_point(std::int64_t nu, double tau_bar) {
  GramRecord r;
  r.nu = nu;
  r.tau_bar = tau_bar;
  r.t = gram_height(nu, tau_bar);
  r.spacing = gram_height(nu + 1, tau_bar) - r.t;
  r.predicted = kTwoPi / std::log(r.t);
  return r;
}

GramSummary gram_spacing_report(std::int64_t nu_from, std::int64_t nu_to, double tau_bar) {
  if (nu_from < 0 || nu_to <= nu_from) fail(ErrorKind::domain_error, "need 0 <= nu_from < nu_to");
  check_tau(tau_bar);
  const auto n = static_cast<std::size_t>(nu_to - nu_from + 1);
  std::vector<double> heights(n + 1);
  for (std::size_t i = 0; i <= n; ++i) heights[i] = gram_height(nu_from + static_cast<std::int64_t>(i), tau_bar);

  GramSummary s;
  s.records.resize(n);
  CompensatedSum<double> ratio_sum, local_sum;
  s.min_ratio = std::numeric_limits<double>::infinity();
  s.max_ratio = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    auto& r = s.records[i];
    r.nu = nu_from + static_cast<std::int64_t>(i);
    r.t = heights[i];
    r.tau_bar = tau_bar;
    r.spacing = heights[i + 1] - heights[i];
    r.predicted = kTwoPi / std::log(r.t);
    const double ratio = r.spacing / r.predicted;
    ratio_sum.add(ratio);
    local_sum.add(r.spacing * std::log(r.t / kTwoPi) / kTwoPi);
    s.min_ratio = std::min(s.min_ratio, ratio);
    s.max_ratio = std::max(s.max_ratio, ratio);
  }
  s.mean_ratio = ratio_sum.value() / static_cast<double>(n);
  s.mean_ratio_local = local_sum.value() / static_cast<double>(n);
  return s;
}

}  // namespace hlq
