#include "hlq/report.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "hlq/error.hpp"
#include "hlq/hlmass.hpp"
#include "hlq/numeric.hpp"
#include "svg.hpp"

namespace hlq {
namespace {

using nlohmann::ordered_json;

std::string opt(const std::optional<double>& v) { return v ? format_g17(*v) : std::string(); }

ordered_json opt_json(const std::optional<double>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); }

double median(std::vector<double> xs) {
  if (xs.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(xs.begin(), xs.end());
  const std::size_t n = xs.size();
  return n % 2 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

struct Metric {
  std::string section;
  std::string name;
  double value;
};

std::vector<Metric> summary_metrics(const ReportResults& r) {
  std::vector<Metric> out;
  if (!r.partition.empty()) {
    double max_mass_err = 0, max_gap_err = 0;
    std::vector<double> gap_errs;
    for (const auto& p : r.partition) {
      if (p.mass) max_mass_err = std::max(max_mass_err, std::abs(*p.mass - r.omega));
      if (p.rel_gap_err) {
        max_gap_err = std::max(max_gap_err, *p.rel_gap_err);
        gap_errs.push_back(*p.rel_gap_err);
      }
    }
    out.push_back({"partition", "omega", r.omega});
    out.push_back({"partition", "intervals", static_cast<double>(gap_errs.size())});
    out.push_back({"partition", "T_first", r.partition.front().T});
    out.push_back({"partition", "T_last", r.partition.back().T});
    out.push_back({"partition", "max_abs_mass_err", max_mass_err});
    out.push_back({"partition", "max_rel_gap_err", max_gap_err});
    out.push_back({"partition", "median_rel_gap_err", median(gap_errs)});
  }
  if (r.gram) {
    out.push_back({"gram", "records", static_cast<double>(r.gram->records.size())});
    out.push_back({"gram", "mean_ratio", r.gram->mean_ratio});
    out.push_back({"gram", "min_ratio", r.gram->min_ratio});
    out.push_back({"gram", "max_ratio", r.gram->max_ratio});
    out.push_back({"gram", "mean_ratio_local", r.gram->mean_ratio_local});
  }
  std::map<std::string, std::pair<int, int>> tally;  // kind -> (total, within)
  for (const auto& rep : r.reports) {
    auto& t = tally[std::string(kind_name(rep.kind))];
    t.first++;
    t.second += rep.within_bound;
  }
  for (const auto& [kind, t] : tally) {
    out.push_back({kind, "reports", static_cast<double>(t.first)});
    out.push_back({kind, "within_bound", static_cast<double>(t.second)});
  }
  return out;
}

}  // namespace

OutputFormat parse_format(std::string_view name) {
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  fail(ErrorKind::precondition, "format must be csv or json");
}

std::string partition_csv(const std::vector<PartitionRecord>& records) {
  std::string s = "nu,T,gap,mass,tan_alpha,predicted_gap,rel_gap_err\n";
  for (const auto& r : records) {
    s += std::to_string(r.nu) + ',' + format_g17(r.T) + ',' + opt(r.gap) + ',' + opt(r.mass) + ',' +
         opt(r.tan_alpha) + ',' + opt(r.predicted_gap) + ',' + opt(r.rel_gap_err) + '\n';
  }
  return s;
}

ordered_json partition_json(const std::vector<PartitionRecord>& records) {
  ordered_json arr = ordered_json::array();
  for (const auto& r : records) {
    arr.push_back({{"nu", r.nu},
                   {"T", r.T},
                   {"phi", r.phi},
                   {"gap", opt_json(r.gap)},
                   {"mass", opt_json(r.mass)},
                   {"tan_alpha", opt_json(r.tan_alpha)},
                   {"predicted_gap", opt_json(r.predicted_gap)},
                   {"rel_gap_err", opt_json(r.rel_gap_err)}});
  }
  return arr;
}

std::string gram_csv(const std::vector<GramRecord>& records) {
  std::string s = "nu,t,tau_bar,spacing,predicted\n";
  for (const auto& r : records) {
    s += std::to_string(r.nu) + ',' + format_g17(r.t) + ',' + format_g17(r.tau_bar) + ',' + format_g17(r.spacing) +
         ',' + format_g17(r.predicted) + '\n';
  }
  return s;
}

ordered_json gram_json(const std::vector<GramRecord>& records) {
  ordered_json arr = ordered_json::array();
  for (const auto& r : records) {
    arr.push_back(
        {{"nu", r.nu}, {"t", r.t}, {"tau_bar", r.tau_bar}, {"spacing", r.spacing}, {"predicted", r.predicted}});
  }
  return arr;
}

std::string reports_csv(const std::vector<ResidualReport>& reports) {
  std::string s = "kind,inputs,observed,predicted,residual,bound,within_bound\n";
  for (const auto& r : reports) {
    std::string inputs;
    for (const auto& [name, value] : r.inputs) {
      if (!inputs.empty()) inputs += ';';
      inputs += name + '=' + format_g17(value);
    }
    s += std::string(kind_name(r.kind)) + ',' + inputs + ',' + format_g17(r.observed) + ',' +
         format_g17(r.predicted) + ',' + format_g17(r.residual) + ',' + format_g17(r.bound) + ',' +
         (r.within_bound ? "true" : "false") + '\n';
  }
  return s;
}

std::string partition_gap_svg(const std::vector<PartitionRecord>& records, double omega) {
  svg::Series gaps{.color = "#1f77b4", .label = "gap T_nu+1 - T_nu", .markers = true};
  svg::Series mean{.color = "#d62728", .label = "omega / ln T_nu"};
  for (const auto& r : records) {
    if (!r.gap) continue;
    gaps.x.push_back(static_cast<double>(r.nu));
    gaps.y.push_back(*r.gap);
    mean.x.push_back(static_cast<double>(r.nu));
    mean.y.push_back(omega / std::log(r.T));
  }
  return svg::line_plot({.title = "Equal-mass partition gaps", .x_label = "nu", .y_label = "gap"}, {gaps, mean});
}

std::string gram_ratio_svg(const GramSummary& summary) {
  std::vector<double> ratios;
  for (const auto& r : summary.records) ratios.push_back(r.spacing / r.predicted);
  return svg::histogram({.title = "Gram spacing / (2 pi / ln t)", .x_label = "ratio", .y_label = "count"}, ratios,
                        40, 1.0);
}

std::string residual_svg(const std::vector<ResidualReport>& reports) {
  svg::Series obs{.color = "#1f77b4", .label = "|R(T)|", .markers = true};
  svg::Series env{.color = "#d62728", .label = "T^(1/3 + 0.1)"};
  for (const auto& r : reports) {
    if (r.kind != ReportKind::balasubramanian) continue;
    const double T = r.inputs.front().second;
    obs.x.push_back(T);
    obs.y.push_back(std::abs(r.residual));
    env.x.push_back(T);
    env.y.push_back(r.bound);
  }
  return svg::line_plot(
      {.title = "Mean-square remainder", .x_label = "T", .y_label = "|residual|", .log_x = true, .log_y = true},
      {obs, env});
}

std::vector<std::filesystem::path> emit_report(const ReportResults& results, const std::filesystem::path& output_dir,
                                               OutputFormat format) {
  if (results.empty()) fail(ErrorKind::precondition, "nothing to report");
  std::error_code ec;
  std::filesystem::create_directories(output_dir, ec);
  if (ec) fail(ErrorKind::io_error, "cannot create " + output_dir.string() + ": " + ec.message());

  std::vector<std::filesystem::path> written;
  auto put = [&](const std::string& name, const std::string& contents) {
    const auto path = output_dir / name;
    write_file_atomic(path, contents);
    written.push_back(path);
  };
  const bool json = format == OutputFormat::json;

  if (!results.partition.empty()) {
    put(json ? "partition.json" : "partition.csv",
        json ? partition_json(results.partition).dump(2) + '\n' : partition_csv(results.partition));
    put("partition_gaps.svg", partition_gap_svg(results.partition, results.omega));
  }
  if (results.gram) {
    put(json ? "gram.json" : "gram.csv",
        json ? gram_json(results.gram->records).dump(2) + '\n' : gram_csv(results.gram->records));
    put("gram_ratio_hist.svg", gram_ratio_svg(*results.gram));
  }
  if (!results.reports.empty()) {
    for (ReportKind kind : {ReportKind::balasubramanian, ReportKind::tka, ReportKind::short_interval,
                            ReportKind::ladder_bounds, ReportKind::ladder_increment}) {
      ordered_json arr = ordered_json::array();
      for (const auto& r : results.reports)
        if (r.kind == kind) arr.push_back(to_json(r));
      if (!arr.empty()) put("verify_" + std::string(kind_name(kind)) + ".json", arr.dump(2) + '\n');
    }
    const bool has_balasubramanian = std::any_of(results.reports.begin(), results.reports.end(), [](const auto& r) {
      return r.kind == ReportKind::balasubramanian;
    });
    if (has_balasubramanian) put("residual_vs_T.svg", residual_svg(results.reports));
    if (!json) put("reports.csv", reports_csv(results.reports));
  }

  const auto metrics = summary_metrics(results);
  if (json) {
    ordered_json j = ordered_json::object();
    for (const auto& m : metrics) j[m.section][m.name] = m.value;
    put("summary.json", j.dump(2) + '\n');
  } else {
    std::string s = "section,metric,value\n";
    for (const auto& m : metrics) s += m.section + ',' + m.name + ',' + format_g17(m.value) + '\n';
    put("summary.csv", s);
  }
  return written;
}

}  // namespace hlq
