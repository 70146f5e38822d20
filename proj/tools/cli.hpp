#pragma once

// Command implementations for the p4eval tool. Kept in a header so the test
// suite can drive the CLI in-process with captured streams.

#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "p4/p4.hpp"

namespace p4eval::cli {

inline constexpr int kExitError = 2;

struct EvalOptions {
  std::string counts;
  std::string file;
  double tau = 0.5;
  std::string format = "table";
};

struct SimulateOptions {
  std::string kind;
  Count population = 10000;
  double pos = -1.0;  // negative: use the kind's default
  double tpr = 0.1;
  double tnr = -1.0;
  std::string out;
  bool svg = false;
  std::string format = "csv";
};

struct SweepOptions {
  std::string file;
  double tau0 = 0.0;
  double tau_n = 1.0;
  double delta = 0.01;
  std::string pair = "both";
  std::string out;
  bool svg = false;
};

namespace detail {

inline ConfusionMatrix parse_counts(const std::string& text) {
  const auto fields = io::detail::split(text);
  if (fields.size() != 4) {
    throw Error(Errc::InvalidArgument, "--counts expects TP,FP,FN,TN");
  }
  std::array<Count, 4> c{};
  for (std::size_t i = 0; i < 4; ++i) {
    if (!io::parse_count(fields[i], c[i])) {
      throw Error(Errc::InvalidArgument, "bad count '" + std::string(fields[i]) + "'");
    }
  }
  return ConfusionMatrix::from_counts(c[0], c[1], c[2], c[3]);
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(Errc::InvalidArgument, "cannot write '" + path.string() + "'");
  f << content;
}

// "out/curve.csv" -> "out/curve", so derived files get their own suffixes.
inline std::string strip_csv(std::string path) {
  if (path.size() > 4 && path.ends_with(".csv")) path.resize(path.size() - 4);
  return path;
}

inline std::vector<io::TableRow> series_rows(const SweepSeries& series) {
  std::vector<io::TableRow> rows;
  for (const auto& p : series.points) {
    rows.push_back({io::format_shortest(p.parameter), p.matrix, p.report});
  }
  return rows;
}

inline std::vector<io::TableRow> curve_rows(const ThresholdCurve& curve) {
  std::vector<io::TableRow> rows;
  for (const auto& p : curve.points) rows.push_back({io::format_shortest(p.tau), p.matrix, p.report});
  return rows;
}

}  // namespace detail

inline int cmd_eval(const EvalOptions& opt, std::ostream& out) {
  const auto format = render::parse_format(opt.format);
  if (opt.counts.empty() == opt.file.empty()) {
    throw Error(Errc::InvalidArgument, "give exactly one of --counts or --file");
  }
  ConfusionMatrix m = opt.counts.empty()
                          ? classify_at_threshold(io::load_samples(opt.file), opt.tau)
                          : detail::parse_counts(opt.counts);
  const MetricReport r = evaluate_all(m);
  switch (format) {
    case render::OutputFormat::Table:
      render::write_report_block(out, "", m, r);
      break;
    case render::OutputFormat::Csv:
      io::write_table_csv(out, "input", {{opt.counts.empty() ? opt.file : "counts", m, r}});
      break;
    case render::OutputFormat::Json:
      out << render::to_json("", "", m, r).dump(2) << '\n';
      break;
  }
  return 0;
}

inline int cmd_cases(const std::string& format_name, std::ostream& out) {
  const auto format = render::parse_format(format_name);
  std::vector<io::TableRow> rows;
  for (const auto& c : paper_cases()) rows.push_back({std::string(c.name), c.matrix, evaluate_all(c.matrix)});
  render::write_rows(out, format, "case", rows, /*blocks=*/true);
  return 0;
}

inline svg::PlotSpec series_plot(const SweepSeries& series, std::string title) {
  svg::PlotSpec plot;
  plot.title = std::move(title);
  plot.x_label = series.varying;
  plot.y_label = "metric value";
  const std::array<std::pair<std::string, MetricValue MetricReport::*>, 5> metrics{{
      {"P4", &MetricReport::p4},
      {"F1", &MetricReport::f1},
      {"MCC'", &MetricReport::mcc_scaled},
      {"J'", &MetricReport::j_scaled},
      {"MK'", &MetricReport::mk_scaled},
  }};
  for (const auto& [name, field] : metrics) {
    svg::Series s{name, {}};
    for (const auto& p : series.points) s.points.emplace_back(p.parameter, (p.report.*field).value_or_nan());
    plot.series.push_back(std::move(s));
  }
  return plot;
}

inline int cmd_simulate(const SimulateOptions& opt, std::ostream& out) {
  const auto format = render::parse_format(opt.format);
  if (opt.kind == "balance" && opt.pos >= 0) {
    throw Error(Errc::InvalidArgument, "--pos does not apply to the balance sweep");
  }
  SweepSeries series;
  std::string title;
  if (opt.kind == "balance") {
    const double tnr = opt.tnr < 0 ? 0.1 : opt.tnr;
    series = balance_sweep(opt.population, opt.tpr, tnr, default_balance_grid());
    title = "metrics vs positive fraction (TPR " + io::format_shortest(opt.tpr) + ", TNR " +
            io::format_shortest(tnr) + ")";
  } else if (opt.kind == "tpr") {
    const double pos = opt.pos < 0 ? 0.95 : opt.pos;
    const double tnr = opt.tnr < 0 ? 0.8 : opt.tnr;
    series = tpr_sweep(opt.population, pos, tnr, default_tpr_grid());
    title = "metrics vs TPR (positive fraction " + io::format_shortest(pos) + ", TNR " +
            io::format_shortest(tnr) + ")";
  } else {
    throw Error(Errc::InvalidArgument, "simulate kind must be 'balance' or 'tpr'");
  }

  const auto rows = detail::series_rows(series);
  if (opt.out.empty()) {
    if (opt.svg) throw Error(Errc::InvalidArgument, "--svg needs --out");
    render::write_rows(out, format, series.varying, rows);
    return 0;
  }
  std::ostringstream csv;
  io::write_table_csv(csv, series.varying, rows);
  detail::write_file(opt.out, csv.str());
  out << "wrote " << opt.out << '\n';
  if (opt.svg) {
    const std::string path = detail::strip_csv(opt.out) + ".svg";
    detail::write_file(path, svg::render(series_plot(series, title)));
    out << "wrote " << path << '\n';
  }
  return 0;
}

inline int cmd_sweep(const SweepOptions& opt, std::ostream& out) {
  std::vector<PairedMetric> pairs;
  if (opt.pair == "mcc-f1" || opt.pair == "both") pairs.push_back(PairedMetric::F1);
  if (opt.pair == "mcc-p4" || opt.pair == "both") pairs.push_back(PairedMetric::P4);
  if (pairs.empty()) throw Error(Errc::InvalidArgument, "--pair must be mcc-f1, mcc-p4 or both");

  const auto samples = io::load_samples(opt.file);
  const ThresholdCurve curve = threshold_sweep(samples, opt.tau0, opt.tau_n, opt.delta);

  std::string csv;
  if (!opt.out.empty()) {
    std::ostringstream s;
    io::write_table_csv(s, "tau", detail::curve_rows(curve));
    csv = s.str();
  } else if (opt.svg) {
    throw Error(Errc::InvalidArgument, "--svg needs --out");
  }

  svg::PlotSpec plot;
  plot.title = "threshold curves";
  plot.x_label = "MCC'";
  plot.y_label = "F1 / P4";
  for (PairedMetric y : pairs) {
    const auto paired = paired_curve(curve, y);
    const OptimalThreshold best = optimal_threshold(paired, y);
    out << "optimal tau (" << pair_name(y) << ") = " << io::format_shortest(best.tau)
        << "  distance = " << io::format_shortest(best.distance) << '\n';
    if (!opt.out.empty()) {
      const std::string path = detail::strip_csv(opt.out) + "." + std::string(pair_name(y)) + ".csv";
      detail::write_file(path, csv);
      out << "wrote " << path << '\n';
    }
    svg::Series s{y == PairedMetric::F1 ? "MCC-F1" : "MCC-P4", {}};
    for (const auto& p : paired) s.points.emplace_back(p.x.value_or_nan(), p.y.value_or_nan());
    plot.series.push_back(std::move(s));
  }
  if (opt.svg) {
    const std::string path = detail::strip_csv(opt.out) + ".svg";
    detail::write_file(path, svg::render(plot));
    out << "wrote " << path << '\n';
  }
  return 0;
}

/// Parses argv-style arguments and dispatches. Returns the process exit code:
/// 0 on success, 2 on any parse or validation failure.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"P4 / F1 / MCC / J / MK evaluation toolkit", "p4eval"};
  app.require_subcommand(1);

  EvalOptions eval_opt;
  auto* eval = app.add_subcommand("eval", "Evaluate one confusion matrix or a scored-sample file");
  eval->add_option("--counts", eval_opt.counts, "TP,FP,FN,TN");
  eval->add_option("--file", eval_opt.file, "CSV of score,label")->check(CLI::ExistingFile);
  eval->add_option("--tau", eval_opt.tau, "threshold for --file (score > tau is positive)")
      ->check(CLI::Range(0.0, 1.0));
  eval->add_option("--format", eval_opt.format, "table|csv|json");

  std::string cases_format = "table";
  auto* cases = app.add_subcommand("cases", "Print the four edge-case matrices and their metrics");
  cases->add_option("--format", cases_format, "table|csv|json");

  SimulateOptions sim_opt;
  auto* sim = app.add_subcommand("simulate", "Simulated-classifier parameter sweeps");
  sim->add_option("kind", sim_opt.kind, "balance|tpr")->required();
  sim->add_option("--n", sim_opt.population, "population size")->check(CLI::PositiveNumber);
  sim->add_option("--pos", sim_opt.pos, "positive fraction (tpr sweep, default 0.95)")
      ->check(CLI::Range(0.0, 1.0));
  sim->add_option("--tpr", sim_opt.tpr, "true positive rate (balance sweep, default 0.1)")
      ->check(CLI::Range(0.0, 1.0));
  sim->add_option("--tnr", sim_opt.tnr, "true negative rate (default 0.1 balance, 0.8 tpr)")
      ->check(CLI::Range(0.0, 1.0));
  sim->add_option("--out", sim_opt.out, "series CSV path");
  sim->add_flag("--svg", sim_opt.svg, "also write a chart next to --out");
  sim->add_option("--format", sim_opt.format, "stdout format when --out is absent");

  SweepOptions sweep_opt;
  auto* sweep = app.add_subcommand("sweep", "Threshold sweep with MCC-F1 / MCC-P4 curves");
  sweep->add_option("file", sweep_opt.file, "CSV of score,label")->required();
  sweep->add_option("--tau0", sweep_opt.tau0, "first threshold");
  sweep->add_option("--tau-n", sweep_opt.tau_n, "last threshold");
  sweep->add_option("--delta", sweep_opt.delta, "threshold step");
  sweep->add_option("--pair", sweep_opt.pair, "mcc-f1|mcc-p4|both");
  sweep->add_option("--out", sweep_opt.out, "curve CSV path prefix");
  sweep->add_flag("--svg", sweep_opt.svg, "also write a chart of the paired curves");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }

  try {
    if (*eval) return cmd_eval(eval_opt, out);
    if (*cases) return cmd_cases(cases_format, out);
    if (*sim) return cmd_simulate(sim_opt, out);
    if (*sweep) return cmd_sweep(sweep_opt, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace p4eval::cli
