#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hlq/gram.hpp"
#include "hlq/partition.hpp"
#include "hlq/verify.hpp"

namespace hlq {

enum class OutputFormat { csv, json };

OutputFormat parse_format(std::string_view name);

struct ReportResults {
  std::vector<PartitionRecord> partition;
  double omega = 1.0;
  std::optional<GramSummary> gram;
  std::vector<ResidualReport> reports;

  bool empty() const { return partition.empty() && !gram && reports.empty(); }
};

std::string partition_csv(const std::vector<PartitionRecord>& records);
nlohmann::ordered_json partition_json(const std::vector<PartitionRecord>& records);
std::string gram_csv(const std::vector<GramRecord>& records);
nlohmann::ordered_json gram_json(const std::vector<GramRecord>& records);
std::string reports_csv(const std::vector<ResidualReport>& reports);

std::string partition_gap_svg(const std::vector<PartitionRecord>& records, double omega);
std::string gram_ratio_svg(const GramSummary& summary);
/// |R(T)| of the Balasubramanian reports against T^{1/3 + 0.1}, log axes.
std::string residual_svg(const std::vector<ResidualReport>& reports);

/// Writes tables, plots, per-kind report JSON and a summary into output_dir.
/// Returns the files written, in write order.
std::vector<std::filesystem::path> emit_report(const ReportResults& results, const std::filesystem::path& output_dir,
                                               OutputFormat format);

}  // namespace hlq
