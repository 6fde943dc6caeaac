#include "hlq/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <thread>

#include "hlq/error.hpp"
#include "hlq/gram.hpp"
#include "hlq/numeric.hpp"
#include "hlq/partition.hpp"
#include "hlq/verify.hpp"
#include "hlq/zfun.hpp"

namespace hlq {

QuadratureConfig RunConfig::quadrature() const {
  QuadratureConfig q;
  q.rel_tol = rel_tol;
  q.z.correction_depth = correction_depth;
  q.jobs = jobs;
  return q;
}

namespace {

using nlohmann::ordered_json;

/// Loads the checkpoint on construction if present and writes it back only
/// when the grid grew.
class CheckpointSession {
 public:
  CheckpointSession(const RunConfig& rc, const QuadratureConfig& q) : path_(rc.checkpoint_path) {
    ckpt_ = std::filesystem::exists(path_) ? load_checkpoint(path_) : MassCheckpoint::for_config(q);
    rows_ = ckpt_.grid.size();
  }
  MassCheckpoint& get() { return ckpt_; }
  void commit() {
    if (ckpt_.grid.size() != rows_) save_checkpoint(path_, ckpt_);
  }

 private:
  std::filesystem::path path_;
  MassCheckpoint ckpt_;
  std::size_t rows_ = 0;
};

/// Scalar results: one JSON object, or a one-row CSV with a header.
void print_record(std::ostream& out, OutputFormat fmt, const ordered_json& rec) {
  if (fmt == OutputFormat::json) {
    out << rec.dump(2) << '\n';
    return;
  }
  std::string head, row;
  for (auto it = rec.begin(); it != rec.end(); ++it) {
    if (!head.empty()) {
      head += ',';
      row += ',';
    }
    head += it.key();
    if (it->is_number_float()) row += format_g17(it->get<double>());
    else if (it->is_string()) row += it->get<std::string>();
    else row += it->dump();
  }
  out << head << '\n' << row << '\n';
}

void emit_text(std::ostream& out, const std::filesystem::path& file, const std::string& text) {
  if (file.empty()) out << text;
  else write_file_atomic(file, text);
}

void print_reports(std::ostream& out, const RunConfig& rc, const std::vector<ResidualReport>& reports) {
  if (rc.format.value_or(OutputFormat::json) == OutputFormat::csv) {
    emit_text(out, rc.output_dir, reports_csv(reports));
    return;
  }
  ordered_json j;
  if (reports.size() == 1) {
    j = to_json(reports.front());
  } else {
    j = ordered_json::array();
    for (const auto& r : reports) j.push_back(to_json(r));
  }
  emit_text(out, rc.output_dir, j.dump(2) + '\n');
}

std::string long_g17(long double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17Lg", v);
  return buf;
}

struct PartitionOpts {
  double omega = 1.0;
  double tau = 0.0;
  double start = 1000.0;
  std::int64_t count = 100;
};

struct GramOpts {
  std::int64_t nu_from = 100;
  std::int64_t nu_to = 1000;
  double tau_bar = 0.0;
};

void add_partition_opts(CLI::App* sub, PartitionOpts& p) {
  sub->add_option("--omega", p.omega, "Mass per interval")->capture_default_str();
  sub->add_option("--tau", p.tau, "Phase, 0 <= tau < omega")->capture_default_str();
  sub->add_option("--start", p.start, "Starting height T_start")->capture_default_str();
  sub->add_option("--count", p.count, "Number of intervals")->capture_default_str()->check(CLI::PositiveNumber);
}

void add_gram_opts(CLI::App* sub, GramOpts& g) {
  sub->add_option("--nu-from", g.nu_from, "First Gram index")->capture_default_str();
  sub->add_option("--nu-to", g.nu_to, "Last Gram index (inclusive)")->capture_default_str();
  sub->add_option("--tau-bar", g.tau_bar, "Phase shift of theta")->capture_default_str();
}

PartitionParams partition_params(const PartitionOpts& p, const RunConfig& rc) {
  PartitionParams params;
  params.omega = p.omega;
  params.tau = p.tau;
  params.T_start = p.start;
  params.count = p.count;
  params.epsilon = rc.epsilon;
  return params;
}

ordered_json gram_summary_json(const GramSummary& s) {
  return {{"mean_ratio", s.mean_ratio},
          {"min_ratio", s.min_ratio},
          {"max_ratio", s.max_ratio},
          {"mean_ratio_local", s.mean_ratio_local}};
}

}  // namespace

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig rc;
  if (const char* env = std::getenv(kCheckpointEnv); env && *env) rc.checkpoint_path = env;
  rc.jobs = std::max(1u, std::thread::hardware_concurrency());

  CLI::App app{"Hardy-Littlewood mass, Jacob's ladder and equal-mass partitions of Z^2", "hlq"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string checkpoint_flag, format_name;
  app.add_option("--checkpoint", checkpoint_flag, "Mass checkpoint file (env " + std::string(kCheckpointEnv) + ")");
  app.add_option("--tol", rc.rel_tol, "Relative tolerance / Z error target")
      ->capture_default_str()
      ->check(CLI::Range(1e-15, 1e-3));
  app.add_option("--depth", rc.correction_depth, "Riemann-Siegel correction depth")
      ->capture_default_str()
      ->check(CLI::Range(0, 4));
  app.add_option("--c0", rc.c0, "Additive constant of the ladder formula")->capture_default_str();
  app.add_option("--epsilon", rc.epsilon, "Span exponent epsilon")->capture_default_str();
  app.add_option("--format", format_name, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", rc.output_dir, "Output file (report: directory)");
  app.add_option("--jobs", rc.jobs, "Worker threads")->check(CLI::Range(1u, 1024u));

  double t = 0;
  double t_from = 0;
  auto* z_cmd = app.add_subcommand("z", "Hardy Z(t) with certified error");
  z_cmd->add_option("--t", t, "Height")->required();
  auto* theta_cmd = app.add_subcommand("theta", "Riemann-Siegel theta(t)");
  theta_cmd->add_option("--t", t, "Height")->required();
  auto* mass_cmd = app.add_subcommand("mass", "I(T) = int_0^T Z^2, or int_from^T with --from");
  mass_cmd->add_option("--t", t, "Upper limit")->required();
  auto* from_opt = mass_cmd->add_option("--from", t_from, "Lower limit (direct quadrature, no checkpoint)");
  auto* ladder_cmd = app.add_subcommand("ladder", "Jacob's ladder phi(T)");
  ladder_cmd->add_option("--t", t, "Height, T >= 100")->required();

  PartitionOpts part;
  auto* partition_cmd = app.add_subcommand("partition", "Equal-mass partition T_nu(omega, tau)");
  add_partition_opts(partition_cmd, part);

  std::int64_t planck_count = 100000;
  double planck_t0 = 1e4;
  auto* planck_cmd = app.add_subcommand("planck", "Micro-intervals of mass h/pi in a local frame");
  planck_cmd->add_option("--t", planck_t0, "Anchor T0")->capture_default_str();
  planck_cmd->add_option("--count", planck_count, "Number of micro-intervals")->capture_default_str();

  GramOpts gram;
  auto* gram_cmd = app.add_subcommand("gram", "Shifted Gram points and spacings");
  add_gram_opts(gram_cmd, gram);

  std::string kind;
  std::vector<double> verify_t, deltas;
  PartitionOpts inc;
  auto* verify_cmd = app.add_subcommand("verify", "Residual reports");
  verify_cmd->add_option("kind", kind, "Report kind")
      ->required()
      ->check(CLI::IsMember({"balasubramanian", "tka", "short_interval", "ladder_bounds", "ladder_increment"}));
  verify_cmd->add_option("--t", verify_t, "Heights");
  verify_cmd->add_option("--delta", deltas, "Damping parameters");
  add_partition_opts(verify_cmd, inc);

  PartitionOpts rep_part;
  GramOpts rep_gram;
  double t_max = 1e5;
  auto* report_cmd = app.add_subcommand("report", "Full report: tables, plots and residuals into --out");
  add_partition_opts(report_cmd, rep_part);
  add_gram_opts(report_cmd, rep_gram);
  report_cmd->add_option("--t-max", t_max, "Largest height in the mass and ladder grids")
      ->capture_default_str()
      ->check(CLI::Range(1e3, 1e6));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    const auto subs = app.get_subcommands();
    err << (subs.empty() ? app.help() : subs.front()->help());
    return 2;
  }
  if (!checkpoint_flag.empty()) rc.checkpoint_path = checkpoint_flag;
  if (!format_name.empty()) rc.format = parse_format(format_name);

  try {
    const QuadratureConfig q = rc.quadrature();
    q.validate();
    const LadderConstants k = rc.ladder();
    const auto scalar_fmt = rc.format.value_or(OutputFormat::json);
    const auto table_fmt = rc.format.value_or(OutputFormat::csv);

    if (z_cmd->parsed()) {
      const ZSample s = z_eval(t, rc.rel_tol, q.z);
      print_record(out, scalar_fmt,
                   {{"t", s.t}, {"z", s.z}, {"abs_err", s.abs_err}, {"method", std::string(method_name(s.method))}});
    } else if (theta_cmd->parsed()) {
      print_record(out, scalar_fmt, {{"t", t}, {"theta", theta(t, q.z.t_switch)}});
    } else if (mass_cmd->parsed()) {
      if (*from_opt) {
        print_record(out, scalar_fmt, {{"from", t_from}, {"T", t}, {"mass", hl_mass_between(t_from, t, q)}});
      } else {
        CheckpointSession session(rc, q);
        const double I = hl_mass(t, q, session.get());
        session.commit();
        print_record(out, scalar_fmt, {{"T", t}, {"I", I}});
      }
    } else if (ladder_cmd->parsed()) {
      CheckpointSession session(rc, q);
      const LadderPoint p = phi_at(t, q, session.get(), k);
      session.commit();
      print_record(out, scalar_fmt, {{"T", p.T}, {"phi", p.phi}, {"mass", p.mass}, {"ratio", p.ratio}, {"c0", k.c0}});
    } else if (partition_cmd->parsed()) {
      CheckpointSession session(rc, q);
      const auto records = generate(partition_params(part, rc), q, session.get(), k);
      session.commit();
      emit_text(out, rc.output_dir,
                table_fmt == OutputFormat::csv ? partition_csv(records) : partition_json(records).dump(2) + '\n');
    } else if (planck_cmd->parsed()) {
      const PlanckSequence seq = planck_sequence(planck_t0, planck_count, q);
      const long double h = kPlanckH;
      long double max_mass_err = 0, max_gap_err = 0;
      for (const auto& s : seq.steps) {
        max_mass_err = std::max(max_mass_err, std::abs(s.mass * 3.141592653589793238462643383279502884L - h) / h);
        max_gap_err = std::max(max_gap_err, std::abs(s.gap * s.z2 - seq.omega) / seq.omega);
      }
      if (rc.format == OutputFormat::csv) {
        std::string text = "nu,offset,gap,z2,mass\n";
        for (std::size_t i = 0; i < seq.steps.size(); ++i) {
          const auto& s = seq.steps[i];
          text += std::to_string(i) + ',' + long_g17(s.offset) + ',' + long_g17(s.gap) + ',' + long_g17(s.z2) + ',' +
                  long_g17(s.mass) + '\n';
        }
        emit_text(out, rc.output_dir, text);
      } else {
        print_record(out, OutputFormat::json,
                     {{"T0", seq.T0},
                      {"omega", static_cast<double>(seq.omega)},
                      {"count", static_cast<std::int64_t>(seq.steps.size())},
                      {"span", static_cast<double>(seq.steps.back().offset + seq.steps.back().gap)},
                      {"z_evaluations", seq.z_evaluations},
                      {"max_rel_mass_pi_err", static_cast<double>(max_mass_err)},
                      {"max_rel_gap_z2_err", static_cast<double>(max_gap_err)}});
      }
    } else if (gram_cmd->parsed()) {
      const GramSummary s = gram_spacing_report(gram.nu_from, gram.nu_to, gram.tau_bar);
      if (table_fmt == OutputFormat::csv) {
        emit_text(out, rc.output_dir, gram_csv(s.records));
      } else {
        ordered_json j{{"summary", gram_summary_json(s)}, {"records", gram_json(s.records)}};
        emit_text(out, rc.output_dir, j.dump(2) + '\n');
      }
    } else if (verify_cmd->parsed()) {
      std::vector<ResidualReport> reports;
      if (kind == "tka") {
        if (deltas.empty()) deltas = {0.04, 0.02, 0.01, 0.005};
        if (deltas.size() >= 2) {
          const TkaFit fit = tka_fit(deltas, q, k);
          if (rc.format.value_or(OutputFormat::json) == OutputFormat::json) {
            ordered_json j{{"reports", ordered_json::array()},
                           {"fit", {{"intercept", fit.intercept}, {"slope", fit.slope}}}};
            for (const auto& r : fit.reports) j["reports"].push_back(to_json(r));
            emit_text(out, rc.output_dir, j.dump(2) + '\n');
            return 0;
          }
          reports = fit.reports;
        } else {
          reports.push_back(tka_residual(deltas.front(), q, k));
        }
      } else {
        CheckpointSession session(rc, q);
        if (kind == "balasubramanian") {
          if (verify_t.empty()) verify_t = {1000.0};
          for (double T : verify_t) reports.push_back(balasubramanian_residual(T, q, session.get(), k));
        } else if (kind == "short_interval") {
          if (verify_t.empty()) verify_t = {1e4};
          for (double T : verify_t) reports.push_back(short_interval_check(T, rc.epsilon, q, session.get(), k));
        } else if (kind == "ladder_bounds") {
          if (verify_t.empty()) verify_t = {1e4, 3e4, 1e5};
          reports = ladder_checks(verify_t, q, session.get(), k);
        } else {
          const auto records = generate(partition_params(inc, rc), q, session.get(), k);
          reports = ladder_checks({}, q, session.get(), k, records, inc.omega);
        }
        session.commit();
      }
      print_reports(out, rc, reports);
    } else if (report_cmd->parsed()) {
      if (rc.output_dir.empty()) rc.output_dir = "hlq_report";
      CheckpointSession session(rc, q);
      ReportResults results;
      results.omega = rep_part.omega;
      results.partition = generate(partition_params(rep_part, rc), q, session.get(), k);
      results.gram = gram_spacing_report(rep_gram.nu_from, rep_gram.nu_to, rep_gram.tau_bar);
      for (double T = 100.0; T <= t_max * (1 + 1e-12); T *= std::sqrt(10.0)) {
        const double Tr = std::round(T);
        results.reports.push_back(balasubramanian_residual(Tr, q, session.get(), k));
      }
      const TkaFit fit = tka_fit({0.04, 0.02, 0.01, 0.005}, q, k);
      results.reports.insert(results.reports.end(), fit.reports.begin(), fit.reports.end());
      results.reports.push_back(short_interval_check(std::min(1e4, t_max), rc.epsilon, q, session.get(), k));
      std::vector<double> grid;
      for (double T : {1e3, 3e3, 1e4, 3e4, 1e5, 3e5, 1e6})
        if (T <= t_max) grid.push_back(T);
      const auto ladder = ladder_checks(grid, q, session.get(), k, results.partition, rep_part.omega);
      results.reports.insert(results.reports.end(), ladder.begin(), ladder.end());
      session.commit();
      for (const auto& path : emit_report(results, rc.output_dir, rc.format.value_or(OutputFormat::csv)))
        out << path.string() << '\n';
    }
  } catch (const Error& e) {
    err << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace hlq
