#include "hlq/hlmass.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <mutex>

#include "hlq/error.hpp"
#include "hlq/numeric.hpp"

namespace hlq {
namespace {

constexpr double kSmallPanel = 0.25;  // fixed panel width below t_switch
constexpr int kMaxBisections = 24;

double integrand_target(double rel_tol) { return std::clamp(0.1 * rel_tol, 1e-12, 1e-6); }

// Panel width at height t: half the local mean zero spacing, pi / ln(t / 2pi).
double panel_width(double t, const QuadratureConfig& cfg) {
  if (t < cfg.z.t_switch) return kSmallPanel * cfg.panel_fraction;
  const double l = std::log(t / kTwoPi);
  const double half_spacing = l > 0 ? kPi / l : cfg.max_panel;
  return std::min(cfg.max_panel, half_spacing) * cfg.panel_fraction;
}

class PanelIntegrator {
 public:
  using Weight = std::function<double(double)>;

  PanelIntegrator(const QuadratureConfig& cfg, Weight weight = {})
      : cfg_(cfg),
        fine_(cfg.nodes_per_oscillation),
        coarse_(std::max(2, cfg.nodes_per_oscillation / 2)),
        target_(integrand_target(cfg.rel_tol)),
        weight_(std::move(weight)) {}

  // int_a^b, with [a, b] cut into unit chunks, each into uniform panels.
  double integrate(double a, double b) const {
    if (!(b > a)) return 0.0;
    std::vector<double> parts;
    double x = a;
    while (x < b) {
      double end = std::min(b, x + 1.0);
      if (x < cfg_.z.t_switch && end > cfg_.z.t_switch) end = cfg_.z.t_switch;
      const double w = panel_width(end, cfg_);
      const auto n = static_cast<long>(std::ceil((end - x) / w - 1e-12));
      const double h = (end - x) / static_cast<double>(std::max(1L, n));
      for (long i = 0; i < std::max(1L, n); ++i) {
        const double lo = x + h * static_cast<double>(i);
        const double hi = (i + 1 == std::max(1L, n)) ? end : x + h * static_cast<double>(i + 1);
        parts.push_back(panel(lo, hi, 0));
      }
      x = end;
    }
    return pairwise_sum(parts);
  }

 private:
  double f(double t) const {
    const double z = z_eval(t, target_, cfg_.z).z;
    const double v = z * z;
    return weight_ ? v * weight_(t) : v;
  }

  double rule(const GaussLegendreRule& r, double a, double b) const {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double s = 0;
    for (int i = 0; i < r.size(); ++i) s += r.weights[i] * f(mid + half * r.nodes[i]);
    return s * half;
  }

  double panel(double a, double b, int depth) const {
    const double fine = rule(fine_, a, b);
    const double coarse = rule(coarse_, a, b);
    const double allowed = cfg_.rel_tol * std::abs(fine) + 1e-3 * cfg_.rel_tol * (b - a);
    if (std::abs(fine - coarse) <= allowed || depth >= kMaxBisections) return fine;
    const double mid = 0.5 * (a + b);
    return panel(a, mid, depth + 1) + panel(mid, b, depth + 1);
  }

  QuadratureConfig cfg_;
  GaussLegendreRule fine_;
  GaussLegendreRule coarse_;
  double target_;
  Weight weight_;
};

void check_compatible(const QuadratureConfig& cfg, const MassCheckpoint& ckpt) {
  if (!(ckpt.z_config == cfg.z)) {
    fail(ErrorKind::checkpoint_conflict, "checkpoint was built with a different Z configuration");
  }
  if (ckpt.tol > cfg.rel_tol) {
    fail(ErrorKind::checkpoint_conflict,
         "checkpoint tolerance " + format_g17(ckpt.tol) + " is coarser than requested " + format_g17(cfg.rel_tol));
  }
}

}  // namespace

void QuadratureConfig::validate() const {
  if (!(rel_tol > 0.0 && rel_tol <= 1e-3)) fail(ErrorKind::domain_error, "rel_tol must be in (0, 1e-3]");
  if (nodes_per_oscillation < 4) fail(ErrorKind::domain_error, "nodes_per_oscillation must be >= 4");
  if (!(max_panel > 0.0) || !std::isfinite(max_panel)) fail(ErrorKind::domain_error, "max_panel must be positive");
  if (!(damped_truncation_eps > 0.0 && damped_truncation_eps < 1.0)) {
    fail(ErrorKind::domain_error, "damped_truncation_eps must be in (0, 1)");
  }
  if (!(panel_fraction > 0.0 && panel_fraction <= 1.0)) fail(ErrorKind::domain_error, "panel_fraction must be in (0, 1]");
  z.validate();
}

QuadratureConfig QuadratureConfig::recheck() const {
  QuadratureConfig r = *this;
  r.nodes_per_oscillation = nodes_per_oscillation + 4;
  r.panel_fraction = 0.5 * panel_fraction;
  return r;
}

double hl_mass_between(double T1, double T2, const QuadratureConfig& cfg) {
  cfg.validate();
  if (!(T1 >= 0.0) || !std::isfinite(T2)) fail(ErrorKind::domain_error, "hl_mass_between needs 0 <= T1");
  if (T2 < T1) fail(ErrorKind::domain_error, "hl_mass_between needs T1 <= T2");
  if (T2 == T1) return 0.0;
  return PanelIntegrator(cfg).integrate(T1, T2);
}

double hl_mass(double T, const QuadratureConfig& cfg, MassCheckpoint& ckpt) {
  cfg.validate();
  if (!(T >= 0.0) || !std::isfinite(T)) fail(ErrorKind::domain_error, "hl_mass requires finite T >= 0");
  check_compatible(cfg, ckpt);

  auto& grid = ckpt.grid;
  const auto at_or_after = [&](double x) {
    return std::lower_bound(grid.begin(), grid.end(), x, [](const GridPoint& g, double v) { return g.T < v; });
  };
  if (auto it = at_or_after(T); it != grid.end() && it->T == T) return it->I;

  QuadratureConfig work = cfg;
  work.rel_tol = ckpt.tol;
  const PanelIntegrator integrator(work);

  const auto K = static_cast<long>(std::floor(T));
  const long L = ckpt.last_integer();
  if (K > L) {
    std::vector<double> blocks(static_cast<std::size_t>(K - L));
    parallel_for(blocks.size(), cfg.jobs, [&](std::size_t i) {
      const double k = static_cast<double>(L) + static_cast<double>(i);
      blocks[i] = integrator.integrate(k, k + 1.0);
    });
    double running = at_or_after(static_cast<double>(L))->I;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      running += blocks[i];
      grid.push_back({static_cast<double>(L) + static_cast<double>(i) + 1.0, running});
    }
  }
  const double base = at_or_after(static_cast<double>(K))->I;
  if (T == static_cast<double>(K)) return base;
  const double value = base + integrator.integrate(static_cast<double>(K), T);
  grid.insert(at_or_after(T), GridPoint{T, value});
  return value;
}

double z2_tail_constant() {
  static const double c = [] {
    double worst = 0;
    double t = 0;
    while (t <= 1.0e4) {
      const double z = z_eval(t, 1e-6).z;
      worst = std::max(worst, z * z / std::sqrt(std::max(1.0, t)));
      const double l = std::log(std::max(t, 20.0) / kTwoPi);
      t += kTwoPi / l / 16.0;
    }
    return 2.0 * worst;
  }();
  return c;
}

DampedMass damped_mass(double delta, const QuadratureConfig& cfg) {
  cfg.validate();
  if (!(delta >= 1e-4 && delta <= 0.5)) {
    fail(ErrorKind::domain_error, "delta must be in [1e-4, 0.5]; smaller values push the truncation point past 1e5");
  }
  DampedMass out;
  out.t_max = std::log(1.0 / cfg.damped_truncation_eps) / (2.0 * delta);
  const PanelIntegrator integrator(cfg, [delta](double t) { return std::exp(-2.0 * delta * t); });

  const auto n_blocks = static_cast<std::size_t>(std::ceil(out.t_max));
  std::vector<double> blocks(n_blocks);
  parallel_for(n_blocks, cfg.jobs, [&](std::size_t i) {
    const double a = static_cast<double>(i);
    blocks[i] = integrator.integrate(a, std::min(a + 1.0, out.t_max));
  });
  out.value = pairwise_sum(blocks);

  out.tail_constant = z2_tail_constant();
  // sqrt is concave, so its tangent at t_max bounds it from above beyond t_max.
  const double tm = out.t_max;
  const double k = 2.0 * delta;
  out.tail_bound = out.tail_constant * std::exp(-k * tm) * (std::sqrt(tm) / k + 1.0 / (2.0 * std::sqrt(tm) * k * k));
  return out;
}

}  // namespace hlq
