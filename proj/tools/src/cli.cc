// Copyright 2026 The memopace Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "memopace/curvefit.h"
#include "memopace/dataset.h"
#include "memopace/error.h"
#include "memopace/eval.h"
#include "memopace/model_io.h"
#include "memopace/pipelines.h"
#include "memopace/service.h"

#ifndef MEMOPACE_INSTALLED_PLANE
#define MEMOPACE_INSTALLED_PLANE ""
#endif
#ifndef MEMOPACE_SOURCE_PLANE
#define MEMOPACE_SOURCE_PLANE ""
#endif

namespace memopace::cli {
namespace {

namespace fs = std::filesystem;

// A library error tied to the input file it came from.
struct FileError {
  std::string path;
  Error error;
};

template <typename Fn>
auto with_file(const std::string& path, Fn fn) {
  try {
    return fn();
  } catch (const Error& e) {
    throw FileError{path, e};
  }
}

std::string read_input(const std::string& path) {
  return with_file(path, [&] { return read_text_file(path); });
}

// Prints aligned columns, or plain CSV when |csv| is set.
class Table {
 public:
  explicit Table(std::vector<std::string> headers)
      : headers_(std::move(headers)) {}

  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  void print(std::ostream& out, bool csv) const {
    if (csv) {
      print_csv_row(out, headers_);
      for (const auto& r : rows_) print_csv_row(out, r);
      return;
    }
    std::vector<std::size_t> width(headers_.size());
    for (std::size_t c = 0; c < headers_.size(); ++c) {
      width[c] = headers_[c].size();
      for (const auto& r : rows_) width[c] = std::max(width[c], r[c].size());
    }
    auto line = [&](const std::vector<std::string>& r) {
      for (std::size_t c = 0; c < r.size(); ++c) {
        if (c) out << "  ";
        const std::string pad(width[c] - r[c].size(), ' ');
        if (c == 0) {
          out << r[c] << pad;
        } else {
          out << pad << r[c];
        }
      }
      out << '\n';
    };
    line(headers_);
    for (const auto& r : rows_) line(r);
  }

 private:
  static void print_csv_row(std::ostream& out,
                            const std::vector<std::string>& r) {
    for (std::size_t c = 0; c < r.size(); ++c) {
      if (c) out << ',';
      out << r[c];
    }
    out << '\n';
  }

  std::vector<std::string> headers_;
  std::vector<std::vector<std::string>> rows_;
};

std::string num(double v) { return format_decimal(v); }
std::string num(const std::optional<double>& v) { return format_decimal(v); }

void print_metrics_rows(Table& t, const std::string& name,
                        const MetricReport& m) {
  t.add({name, num(m.r2), num(m.mse), num(m.mae), num(m.medae), num(m.rmse)});
}

Table cv_table(std::span<const CvSweepRow> rows) {
  Table t({"k", "r2", "mse", "rmse", "mae", "medae"});
  for (const auto& r : rows) {
    t.add({std::to_string(r.k), num(r.r2), num(r.mse), num(r.rmse),
           num(r.mae), num(r.medae)});
  }
  return t;
}

std::vector<AttemptRecord> load_task1(const std::string& path) {
  const auto text = read_input(path);
  return with_file(path, [&] { return parse_task1_csv(text); });
}

std::vector<MatchSample> load_matchlog(const std::string& path) {
  const auto text = read_input(path);
  return with_file(path, [&] { return parse_matchlog(text); });
}

CurveDocument load_curve(const std::string& path) {
  const auto text = read_input(path);
  return with_file(path, [&] { return curve_from_json(text); });
}

struct Options {
  bool csv = false;

  std::string input, format = "task1", out_path;
  std::int64_t score = 0, correct = 0;
  std::string params, rounding = "floor";
  std::string data, report;
  std::uint64_t seed = 0;
  std::size_t kmin = 2, kmax = 9;
  std::string loss = "medae", athlete;
  int trees = 1000;
  std::string curve;
  double time = 0.0;
  std::string a, b;
  double tmin = 0.0, tmax = 0.0, step = 0.1;
  std::string slices = "yearly";
  std::string addr = "127.0.0.1:8080", data_dir = "memopace-data";
};

int cmd_ingest(const Options& o, std::ostream& out) {
  const auto text = read_input(o.input);
  std::size_t rows = 0;
  std::vector<Error> errors;
  std::string normalized;
  with_file(o.input, [&] {
    if (o.format == "task1") {
      auto parsed = parse_task1_csv_collect(text);
      rows = parsed.rows.size();
      errors = std::move(parsed.errors);
      normalized = format_task1_csv(parsed.rows);
    } else {
      auto parsed = parse_matchlog_collect(text);
      rows = parsed.rows.size();
      errors = std::move(parsed.errors);
      normalized = format_matchlog(parsed.rows);
    }
    return 0;
  });
  if (o.csv) {
    out << "rows,errors\n" << rows << ',' << errors.size() << '\n';
  } else {
    out << o.input << ": " << rows << " rows, " << errors.size()
        << " errors\n";
  }
  for (const auto& e : errors) {
    out << o.input << ':' << e.line().value_or(0) << ": "
        << to_string(e.code()) << ": " << e.what() << '\n';
  }
  if (!o.out_path.empty()) {
    with_file(o.out_path, [&] {
      write_text_file(o.out_path, normalized);
      return 0;
    });
  }
  return errors.empty() ? kExitOk : kExitData;
}

LinearModel load_plane(const std::string& explicit_path) {
  std::string path = explicit_path;
  if (path.empty()) {
    for (const char* candidate : {MEMOPACE_INSTALLED_PLANE, MEMOPACE_SOURCE_PLANE}) {
      if (*candidate && fs::exists(candidate)) {
        path = candidate;
        break;
      }
    }
    if (path.empty()) return published_plane();
  }
  const auto text = read_input(path);
  return with_file(path, [&] { return plane_from_json(text); });
}

int cmd_aim(const Options& o, std::ostream& out) {
  const auto plane = load_plane(o.params);
  const auto r = aim(plane, o.score, o.correct, parse_rounding(o.rounding));
  if (o.csv) {
    out << "score,correct,aim,raw,rounding\n"
        << o.score << ',' << o.correct << ',' << r.aim << ',' << num(r.raw)
        << ',' << to_string(r.rounding) << '\n';
  } else {
    out << "aim: " << r.aim << '\n'
        << "raw: " << num(r.raw) << '\n'
        << "rounding: " << to_string(r.rounding) << '\n';
  }
  return kExitOk;
}

int cmd_fit_task1(const Options& o, std::ostream& out) {
  const auto records = load_task1(o.data);
  const auto r = with_file(o.data, [&] { return run_task1(records, o.seed); });
  Table params({"parameter", "value"});
  params.add({"intercept", num(r.model.intercept)});
  params.add({"score", num(r.model.coefficients[0])});
  params.add({"correct_data", num(r.model.coefficients[1])});
  Table test({"set", "r2", "mse", "mae", "mdae", "rmse"});
  print_metrics_rows(test, "test", r.test);
  if (!o.csv) {
    out << "records: " << r.input_count << " read, " << r.cleaned.size()
        << " after cleaning; train " << r.split.train_indices.size()
        << ", test " << r.split.test_indices.size() << " (seed " << r.seed
        << ")\n\n";
  }
  params.print(out, o.csv);
  out << '\n';
  test.print(out, o.csv);
  out << '\n';
  cv_table(r.cv).print(out, o.csv);
  if (!o.report.empty()) {
    with_file(o.report, [&] {
      export_plot_data(r, o.report);
      return 0;
    });
    if (!o.csv) out << "\nreport written to " << o.report << '\n';
  }
  return kExitOk;
}

int cmd_crossval(const Options& o, std::ostream& out) {
  const auto cleaned = clean_task1(load_task1(o.data));
  const auto x = task1_features(cleaned);
  const auto y = task1_targets(cleaned);
  const auto rows = with_file(o.data, [&] {
    return cv_sweep(ols_recipe(false), x, y, o.kmin, o.kmax, o.seed);
  });
  cv_table(rows).print(out, o.csv);
  return kExitOk;
}

int cmd_fit_athlete(const Options& o, std::ostream& out) {
  const auto samples = load_matchlog(o.data);
  Task2Options opts;
  opts.athlete = o.athlete.empty() ? fs::path(o.data).stem().string()
                                   : o.athlete;
  opts.seed = o.seed;
  opts.primary_loss = parse_loss(o.loss);
  opts.forest_trees = o.trees;
  const auto r = with_file(o.data, [&] { return run_task2(samples, opts); });

  if (!o.csv) {
    out << "athlete: " << r.athlete << '\n'
        << "samples: " << r.input_count << " read, " << r.data.cleaned.size()
        << " after cleaning (p" << num(r.high_pct) << " time, p"
        << num(r.low_pct) << " quantity)\n"
        << "split: " << r.split_description << "; train "
        << r.data.split.train_indices.size() << ", test "
        << r.data.split.test_indices.size() << '\n'
        << "time range: " << num(r.t_min) << " .. " << num(r.t_max) << '\n';
    Table curves({"curve", "a", "b", "objective", "converged"});
    for (const auto* fit : {&r.mean_curve, &r.median_curve}) {
      curves.add({std::string(to_string(fit->loss)), num(fit->curve.a),
                  num(fit->curve.b), num(fit->objective),
                  fit->converged ? "yes" : "no"});
    }
    out << '\n';
    curves.print(out, false);
    out << "\nbest tree depth: " << r.depth_sweep.best_depth
        << "; boosting best round " << r.boost.best_round() << " of "
        << r.boost.rounds_run() << "\n\n";
  }
  Table cmp({"model", "r2", "mse", "mae", "mdae", "rmse"});
  for (const auto& row : r.comparison.rows) {
    print_metrics_rows(cmp, row.model, row.report);
  }
  cmp.print(out, o.csv);
  if (!o.report.empty()) {
    with_file(o.report, [&] {
      export_plot_data(r, o.report);
      return 0;
    });
    if (!o.csv) {
      out << "\nreport written to " << o.report << " (curve: "
          << (fs::path(o.report) / "curve.json").string() << ")\n";
    }
  }
  return kExitOk;
}

int cmd_predict(const Options& o, std::ostream& out) {
  const auto doc = load_curve(o.curve);
  const auto quantity =
      with_file(o.curve, [&] { return predict_quantity(doc.curve, o.time); });
  const double capped = predict_capped(doc.curve, o.time);
  if (o.csv) {
    out << "time,quantity,quantity_raw_capped\n"
        << num(o.time) << ',' << quantity << ',' << num(capped) << '\n';
  } else {
    out << "quantity: " << quantity << '\n'
        << "raw_capped: " << num(capped) << '\n';
  }
  return kExitOk;
}

int cmd_compare(const Options& o, std::ostream& out) {
  const auto a = load_curve(o.a);
  const auto b = load_curve(o.b);
  const auto r = with_file(o.a, [&] {
    return compare_athletes(a.curve, b.curve, o.tmin, o.tmax, o.step);
  });
  if (!o.csv) out << "crossovers: " << r.crossovers.size() << '\n';
  Table t({"t_lo", "t_hi"});
  for (const auto& c : r.crossovers) t.add({num(c.t_lo), num(c.t_hi)});
  t.print(out, o.csv);
  if (!o.report.empty()) {
    with_file(o.report, [&] {
      export_plot_data(r, o.report);
      return 0;
    });
  }
  return kExitOk;
}

int cmd_progress(const Options& o, std::ostream& out) {
  const auto samples = load_matchlog(o.data);
  Task2Options opts;
  opts.seed = o.seed;
  const auto report = with_file(o.data, [&] {
    return progress_over_time(samples, parse_slicing(o.slices), opts);
  });
  Table t({"slice", "first_date", "last_date", "samples", "a", "b",
           "objective"});
  for (const auto& s : report.slices) {
    t.add({s.label, format_date(s.first_date), format_date(s.last_date),
           std::to_string(s.sample_count), num(s.curve.curve.a),
           num(s.curve.curve.b), num(s.curve.objective)});
  }
  t.print(out, o.csv);
  if (!o.report.empty()) {
    with_file(o.report, [&] {
      export_plot_data(report, o.report);
      return 0;
    });
  }
  return kExitOk;
}

int cmd_summary(const Options& o, std::ostream& out) {
  const auto text = read_input(o.data);
  std::vector<std::pair<std::string, std::vector<double>>> columns;
  with_file(o.data, [&] {
    const auto first = text.substr(0, text.find_first_of("\r\n"));
    if (first == kTask1Header) {
      const auto records = parse_task1_csv(text);
      std::vector<double> s, c, p;
      for (const auto& r : records) {
        s.push_back(static_cast<double>(r.score));
        c.push_back(static_cast<double>(r.correct_data));
        p.push_back(static_cast<double>(r.perfect));
      }
      columns = {{"score", s}, {"correct_data", c}, {"perfect", p}};
    } else {
      const auto samples = parse_matchlog(text);
      columns = {{"quantity", quantities(samples)}, {"time", times(samples)}};
    }
    return 0;
  });

  std::vector<std::string> headers = {"stat"};
  std::vector<SummaryStats> stats;
  std::vector<BoxplotStats> boxes;
  with_file(o.data, [&] {
    for (const auto& [name, values] : columns) {
      headers.push_back(name);
      stats.push_back(summary_stats(values));
      boxes.push_back(five_number_summary(values));
    }
    return 0;
  });
  Table describe(headers);
  auto stat_row = [&](const std::string& label, auto field) {
    std::vector<std::string> row = {label};
    for (const auto& s : stats) row.push_back(field(s));
    describe.add(std::move(row));
  };
  stat_row("count", [](const SummaryStats& s) { return std::to_string(s.count); });
  stat_row("mean", [](const SummaryStats& s) { return num(s.mean); });
  stat_row("std", [](const SummaryStats& s) { return num(s.std); });
  stat_row("min", [](const SummaryStats& s) { return num(s.min); });
  stat_row("25%", [](const SummaryStats& s) { return num(s.q25); });
  stat_row("50%", [](const SummaryStats& s) { return num(s.q50); });
  stat_row("75%", [](const SummaryStats& s) { return num(s.q75); });
  stat_row("max", [](const SummaryStats& s) { return num(s.max); });
  describe.print(out, o.csv);
  out << '\n';

  Table box({"variable", "median", "lower_hinge", "upper_hinge",
             "lower_whisker", "upper_whisker", "outliers"});
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    std::string outliers;
    for (std::size_t j = 0; j < boxes[i].outliers.size(); ++j) {
      if (j) outliers += ';';
      outliers += num(boxes[i].outliers[j]);
    }
    box.add({columns[i].first, num(boxes[i].median), num(boxes[i].lower_hinge),
             num(boxes[i].upper_hinge), num(boxes[i].lower_whisker),
             num(boxes[i].upper_whisker), outliers});
  }
  box.print(out, o.csv);
  return kExitOk;
}

int cmd_serve(const Options& o, std::ostream& out, std::ostream& err) {
  ServiceOptions opts;
  opts.forest_trees = o.trees;
  const bool ok = serve(o.addr, o.data_dir, opts, [&](int port) {
    out << "listening on " << o.addr.substr(0, o.addr.rfind(':')) << ':'
        << port << " (data dir " << o.data_dir << ")" << std::endl;
  });
  if (!ok) {
    err << "error: cannot bind " << o.addr << '\n';
    return kExitData;
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"memopace: aim calculator and performance curves for "
               "memory sports",
               "memopace"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_flag("--csv", o.csv, "Print tables as CSV");

  const auto formats = CLI::IsMember({"task1", "matchlog"});
  const auto losses = CLI::IsMember({"mse", "medae"});
  const CLI::Validator slicing_check(
      [](std::string& s) -> std::string {
        try {
          parse_slicing(s);
          return {};
        } catch (const Error& e) {
          return e.what();
        }
      },
      "yearly|window:DAYS");

  auto* ingest = app.add_subcommand("ingest", "Parse and validate a CSV file");
  ingest->add_option("--input", o.input, "Input CSV")->required();
  ingest->add_option("--format", o.format, "task1|matchlog")
      ->required()
      ->check(formats);
  ingest->add_option("--out", o.out_path, "Write the valid rows here");

  auto* aim_cmd = app.add_subcommand("aim", "Next-attempt aim from a plane");
  aim_cmd->add_option("--score", o.score, "Attempt score")->required();
  aim_cmd->add_option("--correct", o.correct, "Correct digits")->required();
  aim_cmd->add_option("--params", o.params, "Plane parameter file");
  aim_cmd->add_option("--rounding", o.rounding, "floor|nearest")
      ->check(CLI::IsMember({"floor", "nearest"}));

  auto* fit1 = app.add_subcommand("fit-task1", "Fit the aim plane");
  fit1->add_option("--data", o.data, "Task I CSV")->required();
  fit1->add_option("--seed", o.seed, "Split and fold seed")->required();
  fit1->add_option("--report", o.report, "Report directory");

  auto* cv = app.add_subcommand("crossval", "K-fold sweep of the aim plane");
  cv->add_option("--data", o.data, "Task I CSV")->required();
  cv->add_option("--kmin", o.kmin, "Smallest k")->capture_default_str();
  cv->add_option("--kmax", o.kmax, "Largest k")->capture_default_str();
  cv->add_option("--seed", o.seed, "Fold seed")->required();

  auto* fit2 = app.add_subcommand("fit-athlete", "Fit one athlete's curve");
  fit2->add_option("--data", o.data, "Match log CSV")->required();
  fit2->add_option("--loss", o.loss, "mse|medae")->required()->check(losses);
  fit2->add_option("--seed", o.seed, "Forest and boosting seed")->required();
  fit2->add_option("--report", o.report, "Report directory");
  fit2->add_option("--athlete", o.athlete, "Name (default: file stem)");
  fit2->add_option("--trees", o.trees, "Random forest size")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);

  auto* pred = app.add_subcommand("predict", "Evaluate a stored curve");
  pred->add_option("--curve", o.curve, "Curve JSON")->required();
  pred->add_option("--time", o.time, "Memorization time [s]")->required();

  auto* cmp = app.add_subcommand("compare", "Crossovers of two curves");
  cmp->add_option("--a", o.a, "First curve JSON")->required();
  cmp->add_option("--b", o.b, "Second curve JSON")->required();
  cmp->add_option("--tmin", o.tmin, "Grid start")->required();
  cmp->add_option("--tmax", o.tmax, "Grid end")->required();
  cmp->add_option("--step", o.step, "Grid step")->required();
  cmp->add_option("--report", o.report, "Report directory");

  auto* prog = app.add_subcommand("progress", "Curves per time slice");
  prog->add_option("--data", o.data, "Dated match log CSV")->required();
  prog->add_option("--slices", o.slices, "yearly|window:DAYS")
      ->required()
      ->check(slicing_check);
  prog->add_option("--seed", o.seed, "Seed");
  prog->add_option("--report", o.report, "Report directory");

  auto* summary = app.add_subcommand("summary", "Describe and boxplot");
  summary->add_option("--data", o.data, "Task I or match log CSV")->required();

  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP service");
  serve_cmd->add_option("--addr", o.addr, "HOST:PORT")->capture_default_str();
  serve_cmd->add_option("--data-dir", o.data_dir, "Store directory")
      ->capture_default_str();
  serve_cmd->add_option("--trees", o.trees, "Random forest size for fits")
      ->check(CLI::PositiveNumber);
  o.trees = 1000;

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    if (app.get_subcommands().empty()) {
      err << app.help();
    } else {
      err << "run with --help for usage\n";
    }
    return kExitUsage;
  }

  try {
    if (ingest->parsed()) return cmd_ingest(o, out);
    if (aim_cmd->parsed()) return cmd_aim(o, out);
    if (fit1->parsed()) return cmd_fit_task1(o, out);
    if (cv->parsed()) return cmd_crossval(o, out);
    if (fit2->parsed()) return cmd_fit_athlete(o, out);
    if (pred->parsed()) return cmd_predict(o, out);
    if (cmp->parsed()) return cmd_compare(o, out);
    if (prog->parsed()) return cmd_progress(o, out);
    if (summary->parsed()) return cmd_summary(o, out);
    if (serve_cmd->parsed()) {
      if (!serve_cmd->count("--trees")) o.trees = ServiceOptions{}.forest_trees;
      return cmd_serve(o, out, err);
    }
  } catch (const FileError& fe) {
    err << "error: " << fe.path;
    if (fe.error.line()) err << ':' << *fe.error.line();
    err << ": " << to_string(fe.error.code()) << ": " << fe.error.what()
        << '\n';
    return kExitData;
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace memopace::cli
