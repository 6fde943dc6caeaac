#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hlq/hlmass.hpp"
#include "hlq/ladder.hpp"
#include "hlq/partition.hpp"

namespace hlq {

enum class ReportKind { balasubramanian, tka, short_interval, ladder_bounds, ladder_increment };

std::string_view kind_name(ReportKind kind);

/// observed - predicted against a reference envelope. Implied O(.) constants
/// are unknown, so within_bound is informational only.
struct ResidualReport {
  ReportKind kind = ReportKind::balasubramanian;
  std::vector<std::pair<std::string, double>> inputs;
  double observed = 0;
  double predicted = 0;
  double residual = 0;
  double bound = 0;
  bool within_bound = false;
};

inline constexpr double kDefaultEnvelope = 10.0;

/// I(T) against T ln T + (2c - 1 - ln 2pi) T, bound T^{1/3 + 0.1}.
ResidualReport balasubramanian_residual(double T, const QuadratureConfig& cfg, MassCheckpoint& ckpt,
                                        const LadderConstants& k = {});

double balasubramanian_main(double T, const LadderConstants& k = {});

/// (c - ln(4 pi delta)) / (2 sin delta).
double tka_leading(double delta, const LadderConstants& k = {});

/// damped_mass(delta) - tka_leading(delta); bound = envelope * delta.
ResidualReport tka_residual(double delta, const QuadratureConfig& cfg, const LadderConstants& k = {},
                            double envelope = kDefaultEnvelope);

struct TkaFit {
  std::vector<ResidualReport> reports;
  double intercept = 0;  // least-squares residual ~ intercept + slope * delta
  double slope = 0;
};

TkaFit tka_fit(const std::vector<double>& deltas, const QuadratureConfig& cfg, const LadderConstants& k = {},
               double envelope = kDefaultEnvelope);

/// int_T^{T+U} Z^2 against U ln(e^{-a} phi(T)/2) tan alpha with U = T^{1/3 + 2 eps}.
ResidualReport short_interval_check(double T, double epsilon, const QuadratureConfig& cfg, MassCheckpoint& ckpt,
                                    const LadderConstants& k = {}, double envelope = kDefaultEnvelope);

/// phi(T)/T band checks on T_grid, then one increment report per consecutive
/// pair of `sequence` when it is non-empty.
std::vector<ResidualReport> ladder_checks(const std::vector<double>& T_grid, const QuadratureConfig& cfg,
                                          MassCheckpoint& ckpt, const LadderConstants& k = {},
                                          const std::vector<PartitionRecord>& sequence = {}, double omega = 1.0,
                                          double envelope = kDefaultEnvelope);

nlohmann::ordered_json to_json(const ResidualReport& r);

}  // namespace hlq
