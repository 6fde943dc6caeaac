#include "hlq/verify.hpp"

#include <cmath>

#include "hlq/error.hpp"
#include "hlq/numeric.hpp"

namespace hlq {
namespace {

ResidualReport make_report(ReportKind kind, std::vector<std::pair<std::string, double>> inputs, double observed,
                           double predicted, double bound) {
  ResidualReport r;
  r.kind = kind;
  r.inputs = std::move(inputs);
  r.observed = observed;
  r.predicted = predicted;
  r.residual = observed - predicted;
  r.bound = bound;
  r.within_bound = std::abs(r.residual) <= bound;
  return r;
}

void check_tka_delta(double delta) {
  if (!(delta >= 5e-3 && delta <= 0.1)) fail(ErrorKind::domain_error, "delta must be in [5e-3, 0.1]");
}

}  // namespace

std::string_view kind_name(ReportKind kind) {
  switch (kind) {
    case ReportKind::balasubramanian: return "balasubramanian";
    case ReportKind::tka: return "tka";
    case ReportKind::short_interval: return "short_interval";
    case ReportKind::ladder_bounds: return "ladder_bounds";
    case ReportKind::ladder_increment: return "ladder_increment";
  }
  return "unknown";
}

double balasubramanian_main(double T, const LadderConstants& k) {
  return T * std::log(T) + (2.0 * k.c - 1.0 - std::log(kTwoPi)) * T;
}

ResidualReport balasubramanian_residual(double T, const QuadratureConfig& cfg, MassCheckpoint& ckpt,
                                        const LadderConstants& k) {
  if (!(T >= 100.0) || !std::isfinite(T)) fail(ErrorKind::domain_error, "balasubramanian check needs T >= 100");
  return make_report(ReportKind::balasubramanian, {{"T", T}}, hl_mass(T, cfg, ckpt), balasubramanian_main(T, k),
                     std::pow(T, 1.0 / 3.0 + 0.1));
}

double tka_leading(double delta, const LadderConstants& k) {
  check_tka_delta(delta);
  return (k.c - std::log(4.0 * kPi * delta)) / (2.0 * std::sin(delta));
}

ResidualReport tka_residual(double delta, const QuadratureConfig& cfg, const LadderConstants& k, double envelope) {
  check_tka_delta(delta);
  const DampedMass dm = damped_mass(delta, cfg);
  auto r = make_report(ReportKind::tka,
                       {{"delta", delta}, {"t_max", dm.t_max}, {"tail_bound", dm.tail_bound},
                        {"tail_constant", dm.tail_constant}},
                       dm.value, tka_leading(delta, k), envelope * delta);
  return r;
}

TkaFit tka_fit(const std::vector<double>& deltas, const QuadratureConfig& cfg, const LadderConstants& k,
               double envelope) {
  if (deltas.size() < 2) fail(ErrorKind::domain_error, "need at least two deltas to fit");
  TkaFit fit;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (double d : deltas) {
    fit.reports.push_back(tka_residual(d, cfg, k, envelope));
    const double y = fit.reports.back().residual;
    sx += d;
    sy += y;
    sxx += d * d;
    sxy += d * y;
  }
  const double n = static_cast<double>(deltas.size());
  const double det = n * sxx - sx * sx;
  if (!(det > 0.0)) fail(ErrorKind::domain_error, "deltas must not all coincide");
  fit.slope = (n * sxy - sx * sy) / det;
  fit.intercept = (sy - fit.slope * sx) / n;
  return fit;
}

ResidualReport short_interval_check(double T, double epsilon, const QuadratureConfig& cfg, MassCheckpoint& ckpt,
                                    const LadderConstants& k, double envelope) {
  if (!(T >= 1e3) || !std::isfinite(T)) fail(ErrorKind::domain_error, "short interval check needs T >= 1e3");
  if (!(epsilon > 0.0 && epsilon <= 0.05)) fail(ErrorKind::domain_error, "epsilon must be in (0, 0.05]");
  const double U = std::pow(T, 1.0 / 3.0 + 2.0 * epsilon);
  const double observed = hl_mass_between(T, T + U, cfg);
  const LadderPoint lo = phi_at(T, cfg, ckpt, k);
  const LadderPoint hi = phi_at(T + U, cfg, ckpt, k);
  const double tan_alpha = chord_tan_alpha(lo, hi);
  const double predicted = U * (std::log(0.5 * lo.phi) - k.a) * tan_alpha;
  return make_report(ReportKind::short_interval,
                     {{"T", T}, {"epsilon", epsilon}, {"U", U}, {"phi", lo.phi}, {"tan_alpha", tan_alpha}}, observed,
                     predicted, envelope * std::pow(T, -1.0 / 3.0 + 4.0 * epsilon));
}

std::vector<ResidualReport> ladder_checks(const std::vector<double>& T_grid, const QuadratureConfig& cfg,
                                          MassCheckpoint& ckpt, const LadderConstants& k,
                                          const std::vector<PartitionRecord>& sequence, double omega,
                                          double envelope) {
  for (std::size_t i = 0; i < T_grid.size(); ++i) {
    if (!(T_grid[i] >= 1e3)) fail(ErrorKind::domain_error, "ladder grid must start at T >= 1e3");
    if (i > 0 && !(T_grid[i] > T_grid[i - 1])) fail(ErrorKind::domain_error, "ladder grid must be ascending");
  }
  std::vector<ResidualReport> out;
  for (double T : T_grid) {
    const LadderPoint p = phi_at(T, cfg, ckpt, k);
    // Open band (lower, 2.0): lower = 1.9 from 1e4 on, 1.7 below.
    const double lower = T >= 1e4 ? 1.9 : 1.7;
    auto r = make_report(ReportKind::ladder_bounds, {{"T", T}, {"phi", p.phi}, {"lower", lower}, {"upper", 2.0}},
                         p.ratio, 0.5 * (lower + 2.0), 0.5 * (2.0 - lower));
    r.within_bound = std::abs(r.residual) < r.bound;
    out.push_back(std::move(r));
  }
  for (std::size_t i = 0; i + 1 < sequence.size(); ++i) {
    const auto& a = sequence[i];
    const auto& b = sequence[i + 1];
    const double log_t = std::log(a.T);
    const double observed = (b.phi - a.phi) * log_t;
    const double predicted = 2.0 * omega * log_t / (std::log(0.5 * a.phi) - k.a);
    out.push_back(make_report(ReportKind::ladder_increment,
                              {{"nu", static_cast<double>(a.nu)}, {"T", a.T}, {"omega", omega}}, observed, predicted,
                              envelope * omega));
  }
  return out;
}

nlohmann::ordered_json to_json(const ResidualReport& r) {
  nlohmann::ordered_json j;
  j["kind"] = kind_name(r.kind);
  nlohmann::ordered_json inputs = nlohmann::ordered_json::object();
  for (const auto& [name, value] : r.inputs) inputs[name] = value;
  j["inputs"] = inputs;
  j["observed"] = r.observed;
  j["predicted"] = r.predicted;
  j["residual"] = r.residual;
  j["bound"] = r.bound;
  j["within_bound"] = r.within_bound;
  return j;
}

}  // namespace hlq
