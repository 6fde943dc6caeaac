#pragma once

#include <cstdint>
#include <vector>

namespace hlq {

struct GramRecord {
  std::int64_t nu = 0;
  double t = 0;        // theta(t) = nu pi + tau_bar
  double tau_bar = 0;
  double spacing = 0;  // t_{nu+1}(tau_bar) - t_nu(tau_bar)
  double predicted = 0;  // 2 pi / ln t_nu
};

/// Height where theta reaches nu pi + tau_bar, on the increasing branch.
double gram_height(std::int64_t nu, double tau_bar = 0.0);

GramRecord gram_point(std::int64_t nu, double tau_bar = 0.0);

struct GramSummary {
  std::vector<GramRecord> records;  // nu_from..nu_to inclusive
  double mean_ratio = 0;            // mean of spacing / predicted
  double min_ratio = 0;
  double max_ratio = 0;
  double mean_ratio_local = 0;      // same against 2 pi / ln(t / 2 pi)
};

GramSummary gram_spacing_report(std::int64_t nu_from, std::int64_t nu_to, double tau_bar = 0.0);

}  // namespace hlq
