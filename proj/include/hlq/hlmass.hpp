#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "hlq/zfun.hpp"

namespace hlq {

struct QuadratureConfig {
  double rel_tol = 1e-9;
  int nodes_per_oscillation = 12;  // Gauss-Legendre nodes per panel
  double max_panel = 1.0;          // upper cap on panel width
  double damped_truncation_eps = 1e-14;
  double panel_fraction = 1.0;     // panel width as a fraction of half the mean zero spacing
  unsigned jobs = 1;
  ZConfig z;

  void validate() const;

  /// Same tolerance on a different node count and panel layout, used to
  /// re-integrate intervals independently of the pass that produced them.
  QuadratureConfig recheck() const;
};

struct GridPoint {
  double T = 0;
  double I = 0;
  bool operator==(const GridPoint&) const = default;
};

/// Cumulative Hardy-Littlewood mass on a monotone grid. Integer heights
/// 0, 1, ..., L are always present and contiguous; any other stored height
/// is a previously requested point. Every stored value is the canonical
/// I(floor T) + Q[floor T, T], so lookups never depend on call history.
struct MassCheckpoint {
  static constexpr std::string_view kVersion = "1";

  std::string version{kVersion};
  double tol = 1e-9;
  ZConfig z_config;
  std::vector<GridPoint> grid{GridPoint{0.0, 0.0}};

  MassCheckpoint() = default;
  MassCheckpoint(double tol_, ZConfig z) : tol(tol_), z_config(z) {}

  static MassCheckpoint for_config(const QuadratureConfig& cfg) { return {cfg.rel_tol, cfg.z}; }

  /// Throws format_error if any grid invariant is broken.
  void validate() const;

  /// Largest contiguous integer height.
  long last_integer() const;

  bool operator==(const MassCheckpoint&) const = default;
};

/// I(T) = int_0^T Z(t)^2 dt. Extends ckpt as needed.
double hl_mass(double T, const QuadratureConfig& cfg, MassCheckpoint& ckpt);

/// int_{T1}^{T2} Z(t)^2 dt by direct quadrature over [T1, T2].
double hl_mass_between(double T1, double T2, const QuadratureConfig& cfg);

struct DampedMass {
  double value = 0;       // int_0^{t_max} Z^2 e^{-2 delta t} dt
  double tail_bound = 0;  // bound on the omitted int_{t_max}^inf
  double t_max = 0;
  double tail_constant = 0;  // C in Z^2 <= C max(1, t)^{1/2}
};

DampedMass damped_mass(double delta, const QuadratureConfig& cfg);

/// Empirical C with Z(t)^2 <= C max(1, t)^{1/2} on [0, 1e4], including a
/// safety factor of 2. Computed once per process.
double z2_tail_constant();

std::string serialize_checkpoint(const MassCheckpoint& ckpt);
MassCheckpoint parse_checkpoint(std::string_view text);

MassCheckpoint load_checkpoint(const std::filesystem::path& path);
void save_checkpoint(const std::filesystem::path& path, const MassCheckpoint& ckpt);

/// Writes via a temporary file and rename.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

}  // namespace hlq
