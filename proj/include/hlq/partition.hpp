#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hlq/hlmass.hpp"
#include "hlq/ladder.hpp"

namespace hlq {

struct PartitionParams {
  double omega = 1.0;   // mass carried by every interval
  double tau = 0.0;     // phase, 0 <= tau < omega
  double T_start = 1000.0;
  std::int64_t count = 1;
  double epsilon = 0.01;

  void validate() const;
};

/// One point T_nu of the sequence and the interval [T_nu, T_nu+1] that
/// starts there. The interval fields are empty on the terminal point.
struct PartitionRecord {
  std::int64_t nu = 0;
  double T = 0;
  double phi = 0;  // ladder value at T
  std::optional<double> gap;
  std::optional<double> mass;  // independent re-integration over the interval
  std::optional<double> tan_alpha;
  std::optional<double> predicted_gap;
  std::optional<double> rel_gap_err;
};

struct Seed {
  std::int64_t nu0 = 0;
  double T = 0;
};

/// First lattice point I(T) = omega * nu0 + tau at or above T_start.
Seed seed_point(const PartitionParams& params, const QuadratureConfig& cfg, MassCheckpoint& ckpt);

/// The T > T_prev with int_{T_prev}^{T} Z^2 = omega.
double next_point(double T_prev, double omega, const QuadratureConfig& cfg);

/// count intervals (count + 1 records) starting from the seed.
std::vector<PartitionRecord> generate(const PartitionParams& params, const QuadratureConfig& cfg,
                                      MassCheckpoint& ckpt, const LadderConstants& k = {});

/// omega / ((ln(phi_lo/2) - a) tan alpha) for the chord between lo and hi.
double predicted_gap(const LadderPoint& lo, const LadderPoint& hi, double omega, const LadderConstants& k = {});

struct MeanGapStat {
  double mean_gap = 0;
  double predicted = 0;  // omega / ln T_nu
  double ratio = 0;
  std::int64_t n0 = 0;
  double span = 0;
  double u0 = 0;  // T_nu^{1/3 + 2 eps}
};

/// Arithmetic mean of the first N0 gaps, where N0 is the smallest count whose
/// span reaches U0 = T^{1/3 + 2 eps} at the anchor T = records.front().T.
MeanGapStat mean_gap_stat(const std::vector<PartitionRecord>& records, double omega, double epsilon = 0.01);

inline constexpr long double kPlanckH = 6.6e-27L;

struct PlanckStep {
  long double offset = 0;  // T_nu - T0
  long double gap = 0;
  long double z2 = 0;      // Z^2 used for this micro-interval
  long double mass = 0;    // z2 * gap
};

struct PlanckSequence {
  double T0 = 0;
  long double omega = 0;  // h / pi
  std::vector<PlanckStep> steps;
  std::int64_t z_evaluations = 0;
};

/// Micro-intervals of mass h/pi walked in a local frame around T0.
PlanckSequence planck_sequence(double T0, std::int64_t count, const QuadratureConfig& cfg);

}  // namespace hlq
