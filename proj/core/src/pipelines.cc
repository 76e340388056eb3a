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

#include "memopace/pipelines.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <system_error>

#include "json_codec.h"
#include "memopace/error.h"
#include "memopace/model_io.h"
#include "memopace/plot.h"

namespace memopace {
namespace {

using json_codec::json;

constexpr std::size_t kMinTask1Rows = 10;
constexpr std::size_t kHistogramBins = 20;

std::vector<std::pair<double, double>> xy(std::span<const double> x,
                                          std::span<const double> y) {
  std::vector<std::pair<double, double>> out;
  for (std::size_t i = 0; i < x.size(); ++i) out.emplace_back(x[i], y[i]);
  return out;
}

std::vector<std::pair<double, double>> grid_xy(
    std::span<const CurvePoint> grid) {
  std::vector<std::pair<double, double>> out;
  for (const auto& p : grid) out.emplace_back(p.t, p.value);
  return out;
}

Predictor capped_curve_predictor(const HyperbolaCurve& curve) {
  return [curve](const DesignMatrix& x) {
    std::vector<double> out(x.rows());
    for (std::size_t i = 0; i < x.rows(); ++i) {
      out[i] = predict_capped(curve, x(i, 0));
    }
    return out;
  };
}

template <typename Fn>
Predictor per_row(Fn fn) {
  return [fn](const DesignMatrix& x) {
    std::vector<double> out(x.rows());
    for (std::size_t i = 0; i < x.rows(); ++i) out[i] = fn(x(i, 0));
    return out;
  };
}

json summary_json(const SummaryStats& s) {
  return {{"count", s.count}, {"mean", s.mean}, {"std", s.std},
          {"min", s.min},     {"q25", s.q25},   {"q50", s.q50},
          {"q75", s.q75},     {"max", s.max}};
}

json boxplot_json(const BoxplotStats& b) {
  return {{"median", b.median},
          {"lower_hinge", b.lower_hinge},
          {"upper_hinge", b.upper_hinge},
          {"lower_whisker", b.lower_whisker},
          {"upper_whisker", b.upper_whisker},
          {"outliers", b.outliers}};
}

std::string histogram_csv(std::span<const HistogramBin> bins) {
  std::string out = "lower_edge,count\n";
  for (const auto& b : bins) {
    out += format_decimal(b.lower_edge) + ',' + std::to_string(b.count) + '\n';
  }
  return out;
}

std::string boxplot_csv(
    std::initializer_list<std::pair<std::string_view, const BoxplotStats*>>
        rows) {
  std::string out =
      "variable,median,lower_hinge,upper_hinge,lower_whisker,upper_whisker,"
      "outliers\n";
  for (const auto& [name, b] : rows) {
    std::string outliers;
    for (std::size_t i = 0; i < b->outliers.size(); ++i) {
      if (i) outliers += ';';
      outliers += format_decimal(b->outliers[i]);
    }
    out += std::string(name) + ',' + format_decimal(b->median) + ',' +
           format_decimal(b->lower_hinge) + ',' +
           format_decimal(b->upper_hinge) + ',' +
           format_decimal(b->lower_whisker) + ',' +
           format_decimal(b->upper_whisker) + ',' + outliers + '\n';
  }
  return out;
}

std::string histogram_svg(std::span<const HistogramBin> bins,
                          const std::string& title,
                          const std::string& x_label) {
  SvgSeries bars;
  bars.label = "count";
  bars.style = SvgSeries::Style::kBars;
  bars.color = "#4a7bb7";
  bars.bar_width =
      bins.size() > 1 ? bins[1].lower_edge - bins[0].lower_edge : 1.0;
  if (bars.bar_width <= 0.0) bars.bar_width = 1.0;
  for (const auto& b : bins) {
    bars.points.emplace_back(b.lower_edge, static_cast<double>(b.count));
  }
  SvgChart chart;
  chart.title = title;
  chart.x_label = x_label;
  chart.y_label = "count";
  chart.series.push_back(std::move(bars));
  chart.y_min = 0.0;
  return render_svg(chart);
}

void ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw Error(ErrorCode::kIoError,
                "cannot create " + dir.string() + ": " + ec.message());
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Aim calculator
// ---------------------------------------------------------------------------

RoundingMode parse_rounding(std::string_view name) {
  if (name == "floor") return RoundingMode::kFloor;
  if (name == "nearest") return RoundingMode::kNearest;
  throw Error(ErrorCode::kBadArgument,
              "unknown rounding '" + std::string(name) + "' (floor|nearest)");
}

std::string_view to_string(RoundingMode mode) {
  return mode == RoundingMode::kFloor ? "floor" : "nearest";
}

LinearModel published_plane() {
  return {11.843014003940112, {0.1897767, 0.72575744}};
}

AimResult aim(const LinearModel& plane, std::int64_t score,
              std::int64_t correct_data, RoundingMode mode) {
  if (score < 0 || correct_data < 0) {
    throw Error(ErrorCode::kNegativeInput,
                "score and correct digits must be non-negative");
  }
  const double features[] = {static_cast<double>(score),
                             static_cast<double>(correct_data)};
  AimResult result;
  result.raw = predict_linear(plane, features);
  result.rounding = mode;
  const double rounded = mode == RoundingMode::kFloor
                             ? std::floor(result.raw)
                             : round_half_up(result.raw);
  result.aim = std::max<std::int64_t>(0, static_cast<std::int64_t>(rounded));
  return result;
}

DesignMatrix task1_features(std::span<const AttemptRecord> records) {
  DesignMatrix x(records.size(), 2);
  for (std::size_t i = 0; i < records.size(); ++i) {
    x(i, 0) = static_cast<double>(records[i].score);
    x(i, 1) = static_cast<double>(records[i].correct_data);
  }
  return x;
}

std::vector<double> task1_targets(std::span<const AttemptRecord> records) {
  std::vector<double> y;
  y.reserve(records.size());
  for (const auto& r : records) y.push_back(static_cast<double>(r.perfect));
  return y;
}

Task1Result run_task1(std::span<const AttemptRecord> records,
                      std::uint64_t seed) {
  Task1Result result;
  result.seed = seed;
  result.input_count = records.size();
  result.cleaned = clean_task1(records);
  const std::size_t n = result.cleaned.size();
  if (n < kMinTask1Rows) {
    throw Error(ErrorCode::kTooFewRows,
                std::to_string(n) + " records after cleaning; need " +
                    std::to_string(kMinTask1Rows));
  }
  const auto x = task1_features(result.cleaned);
  const auto y = task1_targets(result.cleaned);
  result.split = random_split(n, result.test_fraction, seed);
  const auto& train = result.split.train_indices;
  const auto& test = result.split.test_indices;

  result.model = fit_ols(x.select_rows(train), gather(y, train));
  result.test_predictions = predict_linear(result.model, x.select_rows(test));
  for (auto& p : result.test_predictions) p = round_half_up(p);
  result.test = compute_metrics(gather(y, test), result.test_predictions);
  result.cv = cv_sweep(ols_recipe(false), x, y, 2, std::min<std::size_t>(9, n),
                       seed);
  return result;
}

// ---------------------------------------------------------------------------
// Athlete curves
// ---------------------------------------------------------------------------

AthleteData prepare_athlete_data(std::span<const MatchSample> samples,
                                 const Task2Options& opts,
                                 std::size_t min_cleaned) {
  if (samples.empty()) throw Error(ErrorCode::kTooFewRows, "no samples");
  AthleteData data;
  data.cleaned =
      sort_by_time(clean_task2(samples, opts.high_pct, opts.low_pct));
  const std::size_t needed = std::max(min_cleaned, opts.split_modulus);
  if (data.cleaned.size() < needed) {
    throw Error(ErrorCode::kTooFewRows,
                std::to_string(data.cleaned.size()) +
                    " samples after cleaning; need " + std::to_string(needed));
  }
  data.split = ordered_split(data.cleaned.size(), opts.split_modulus);
  for (auto i : data.split.train_indices) {
    data.train_time.push_back(data.cleaned[i].time);
    data.train_quantity.push_back(data.cleaned[i].quantity);
  }
  for (auto i : data.split.test_indices) {
    data.test_time.push_back(data.cleaned[i].time);
    data.test_quantity.push_back(data.cleaned[i].quantity);
  }
  return data;
}

HyperbolaFit fit_athlete_curve(std::span<const MatchSample> samples,
                               const Task2Options& opts, LossKind loss,
                               std::size_t min_cleaned) {
  const auto data = prepare_athlete_data(samples, opts, min_cleaned);
  return fit_hyperbola(data.train_time, data.train_quantity, loss, opts.fit);
}

AthleteCurveReport run_task2(std::span<const MatchSample> samples,
                             const Task2Options& opts) {
  AthleteCurveReport r;
  r.athlete = opts.athlete;
  r.seed = opts.seed;
  r.high_pct = opts.high_pct;
  r.low_pct = opts.low_pct;
  r.split_description =
      "ordered modulus " + std::to_string(opts.split_modulus);
  r.primary_loss = opts.primary_loss;
  r.input_count = samples.size();
  r.data = prepare_athlete_data(samples, opts, kMinSliceSamples);

  const auto& d = r.data;
  r.t_min = d.cleaned.front().time;
  r.t_max = d.cleaned.back().time;
  const auto x_train = DesignMatrix::from_column(d.train_time);
  const auto x_test = DesignMatrix::from_column(d.test_time);
  const auto& y_train = d.train_quantity;
  const auto& y_test = d.test_quantity;

  r.linear = fit_ols(x_train, y_train);
  r.polynomial = fit_polynomial(d.train_time, y_train, 2);
  r.logarithmic = fit_log(d.train_time, y_train);
  r.mean_curve = fit_hyperbola_ls(d.train_time, y_train, opts.fit);
  r.median_curve = fit_hyperbola_median(d.train_time, y_train, opts.fit);
  r.depth_sweep = sweep_depth(x_train, y_train, x_test, y_test, 1, 10);
  r.tree = fit_tree(x_train, y_train, r.depth_sweep.best_depth);

  ForestOptions forest_opts;
  forest_opts.n_estimators = opts.forest_trees;
  forest_opts.seed = opts.seed;
  r.forest = fit_forest(x_train, y_train, forest_opts);
  r.boost = fit_boost(x_train, y_train, x_test, y_test, opts.boost);

  const auto linear = r.linear;
  const auto poly = r.polynomial;
  const auto logm = r.logarithmic;
  const auto tree = r.tree;
  const auto forest = r.forest;
  const auto boost = r.boost;
  const std::vector<FittedModel> models = {
      {std::string(kLinearRow),
       [linear](const DesignMatrix& x) { return predict_linear(linear, x); },
       false},
      {std::string(kPolynomialRow),
       per_row([poly](double t) { return poly.predict(t); }), true},
      {std::string(kLogRow),
       per_row([logm](double t) { return logm.predict(t); }), true},
      {std::string(kHyperbolaMeanRow),
       capped_curve_predictor(r.mean_curve.curve), true},
      {std::string(kHyperbolaMedianRow),
       capped_curve_predictor(r.median_curve.curve), true},
      {std::string(kTreeRow),
       [tree](const DesignMatrix& x) { return tree.predict(x); }, true},
      {std::string(kForestRow),
       [forest](const DesignMatrix& x) { return forest.predict(x); }, true},
      {std::string(kBoostRow),
       [boost](const DesignMatrix& x) { return boost.predict(x); }, true},
  };
  r.comparison = compare_models(models, x_test, y_test, false);

  const auto ts = times(d.cleaned);
  const auto qs = quantities(d.cleaned);
  r.time_stats = summary_stats(ts);
  r.quantity_stats = summary_stats(qs);
  r.time_box = five_number_summary(ts);
  r.quantity_box = five_number_summary(qs);
  return r;
}

CrossoverReport compare_athletes(const HyperbolaCurve& a,
                                 const HyperbolaCurve& b, double t_min,
                                 double t_max, double step) {
  CrossoverReport report;
  report.grid = grid_points(t_min, t_max, step);
  int last_sign = 0;
  std::size_t last_index = 0;
  for (std::size_t i = 0; i < report.grid.size(); ++i) {
    const double t = report.grid[i];
    const double va = predict_capped(a, t);
    const double vb = predict_capped(b, t);
    report.a_values.push_back(va);
    report.b_values.push_back(vb);
    const double diff = va - vb;
    const int sign = diff > 0.0 ? 1 : (diff < 0.0 ? -1 : 0);
    if (sign == 0) continue;
    if (last_sign != 0 && sign != last_sign) {
      report.crossovers.push_back({report.grid[last_index], t});
    }
    last_sign = sign;
    last_index = i;
  }
  return report;
}

Slicing parse_slicing(std::string_view text) {
  if (text == "yearly") return {SliceKind::kYearly, 365};
  constexpr std::string_view kWindow = "window:";
  if (text.starts_with(kWindow)) {
    const std::string days(text.substr(kWindow.size()));
    try {
      std::size_t used = 0;
      const int n = std::stoi(days, &used);
      if (used == days.size() && n >= 1) return {SliceKind::kWindow, n};
    } catch (const std::exception&) {
    }
  }
  throw Error(ErrorCode::kBadArgument,
              "slicing must be 'yearly' or 'window:<days>'");
}

std::string to_string(const Slicing& slicing) {
  return slicing.kind == SliceKind::kYearly
             ? std::string("yearly")
             : "window:" + std::to_string(slicing.window_days);
}

ProgressReport progress_over_time(std::span<const MatchSample> samples,
                                  const Slicing& slicing,
                                  const Task2Options& opts) {
  using std::chrono::sys_days;
  if (slicing.kind == SliceKind::kWindow && slicing.window_days < 1) {
    throw Error(ErrorCode::kBadArgument, "window must be >= 1 day");
  }
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!samples[i].date) {
      throw Error(ErrorCode::kMissingDates,
                  "sample " + std::to_string(i + 1) + " has no date");
    }
  }
  std::vector<MatchSample> ordered(samples.begin(), samples.end());
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const MatchSample& a, const MatchSample& b) {
                     return sys_days(*a.date) < sys_days(*b.date);
                   });

  // Consecutive runs of samples sharing a slice key.
  struct Group {
    long key = 0;
    std::vector<MatchSample> samples;
  };
  std::vector<Group> groups;
  const sys_days origin = ordered.empty() ? sys_days{} : sys_days(*ordered.front().date);
  for (const auto& s : ordered) {
    long key = 0;
    if (slicing.kind == SliceKind::kYearly) {
      key = int(s.date->year());
    } else {
      key = static_cast<long>((sys_days(*s.date) - origin).count()) /
            slicing.window_days;
    }
    if (groups.empty() || groups.back().key != key) groups.push_back({key, {}});
    groups.back().samples.push_back(s);
  }

  std::vector<std::vector<Group>> merged;
  std::vector<Group> pending;
  std::size_t pending_count = 0;
  for (auto& g : groups) {
    pending_count += g.samples.size();
    pending.push_back(std::move(g));
    if (pending_count >= kMinSliceSamples) {
      merged.push_back(std::move(pending));
      pending.clear();
      pending_count = 0;
    }
  }
  if (!pending.empty()) {
    if (merged.empty()) {
      throw Error(ErrorCode::kAllSlicesTooSmall,
                  "fewer than " + std::to_string(kMinSliceSamples) +
                      " dated samples in total");
    }
    for (auto& g : pending) merged.back().push_back(std::move(g));
  }

  ProgressReport report;
  report.slicing = slicing;
  for (const auto& slice_groups : merged) {
    ProgressSlice slice;
    std::vector<MatchSample> members;
    for (const auto& g : slice_groups) {
      members.insert(members.end(), g.samples.begin(), g.samples.end());
    }
    slice.first_date = *members.front().date;
    slice.last_date = *members.back().date;
    slice.sample_count = members.size();
    if (slicing.kind == SliceKind::kYearly) {
      slice.label = std::to_string(slice_groups.front().key);
      if (slice_groups.back().key != slice_groups.front().key) {
        slice.label += "-" + std::to_string(slice_groups.back().key);
      }
    } else {
      slice.label =
          format_date(slice.first_date) + ".." + format_date(slice.last_date);
    }
    slice.curve = fit_athlete_curve(members, opts, LossKind::kMedianAbsolute,
                                    opts.split_modulus);
    report.slices.push_back(std::move(slice));
  }
  return report;
}

// ---------------------------------------------------------------------------
// Serialization and export
// ---------------------------------------------------------------------------

void write_text_file(const std::filesystem::path& path,
                     std::string_view contents) {
  if (path.has_parent_path()) ensure_dir(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIoError, "cannot write " + tmp.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) throw Error(ErrorCode::kIoError, "write failed: " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    throw Error(ErrorCode::kIoError,
                "cannot rename onto " + path.string() + ": " + ec.message());
  }
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string curve_grid_csv(std::span<const CurvePoint> grid) {
  std::string out = "t,quantity_capped\n";
  for (const auto& p : grid) {
    out += format_decimal(p.t) + ',' + format_decimal(p.value) + '\n';
  }
  return out;
}

std::string task1_report_json(const Task1Result& r) {
  json cv = json::array();
  for (const auto& row : r.cv) cv.push_back(json_codec::encode(row));
  json j = {{"seed", r.seed},
            {"split", "random test_fraction " + format_decimal(r.test_fraction)},
            {"input_count", r.input_count},
            {"cleaned_count", r.cleaned.size()},
            {"train_count", r.split.train_indices.size()},
            {"test_count", r.split.test_indices.size()},
            {"model", json_codec::encode(r.model)},
            {"test_predictions_rounded", true},
            {"test_metrics", json_codec::encode(r.test)},
            {"cv_table", std::move(cv)}};
  return j.dump(2) + "\n";
}

std::string athlete_report_metadata_json(const AthleteCurveReport& r) {
  json j = {
      {"athlete", r.athlete},
      {"seed", r.seed},
      {"cleaning", {{"high_pct", r.high_pct}, {"low_pct", r.low_pct}}},
      {"split", r.split_description},
      {"loss", std::string(to_string(r.primary_loss))},
      {"input_count", r.input_count},
      {"cleaned_count", r.data.cleaned.size()},
      {"train_count", r.data.split.train_indices.size()},
      {"test_count", r.data.split.test_indices.size()},
      {"time_range", {r.t_min, r.t_max}},
      {"curves",
       {{"mse", json_codec::encode(r.mean_curve)},
        {"medae", json_codec::encode(r.median_curve)}}},
      {"linear", json_codec::encode(r.linear)},
      {"polynomial", json_codec::encode(r.polynomial.linear)},
      {"logarithm", {{"a", r.logarithmic.a}, {"b", r.logarithmic.b}}},
      {"best_depth", r.depth_sweep.best_depth},
      {"forest_trees", r.forest.trees().size()},
      {"boost",
       {{"best_round", r.boost.best_round()},
        {"rounds_run", r.boost.rounds_run()}}},
      {"comparison", json_codec::encode(r.comparison)},
      {"summary",
       {{"time", summary_json(r.time_stats)},
        {"quantity", summary_json(r.quantity_stats)}}},
      {"boxplot",
       {{"time", boxplot_json(r.time_box)},
        {"quantity", boxplot_json(r.quantity_box)}}},
  };
  return j.dump(2) + "\n";
}

std::string crossover_report_json(const CrossoverReport& r) {
  json crossings = json::array();
  for (const auto& c : r.crossovers) {
    crossings.push_back({{"t_lo", c.t_lo}, {"t_hi", c.t_hi}});
  }
  return json({{"grid", r.grid},
               {"a", r.a_values},
               {"b", r.b_values},
               {"crossovers", std::move(crossings)}})
      .dump();
}

std::string progress_report_json(const ProgressReport& r) {
  json slices = json::array();
  for (const auto& s : r.slices) {
    slices.push_back({{"label", s.label},
                      {"first_date", format_date(s.first_date)},
                      {"last_date", format_date(s.last_date)},
                      {"sample_count", s.sample_count},
                      {"curve", json_codec::encode(s.curve)}});
  }
  return json({{"slicing", to_string(r.slicing)},
               {"min_slice_samples", kMinSliceSamples},
               {"loss", "medae"},
               {"slices", std::move(slices)}})
             .dump(2) +
         "\n";
}

void export_plot_data(const AthleteCurveReport& r,
                      const std::filesystem::path& dir, double step) {
  ensure_dir(dir);
  const auto mean_grid = evaluate_grid(r.mean_curve.curve, r.t_min, r.t_max, step);
  const auto median_grid =
      evaluate_grid(r.median_curve.curve, r.t_min, r.t_max, step);
  write_text_file(dir / "curve_mse.csv", curve_grid_csv(mean_grid));
  write_text_file(dir / "curve_medae.csv", curve_grid_csv(median_grid));

  std::string samples = "quantity,time,set\n";
  std::vector<bool> is_test(r.data.cleaned.size(), false);
  for (auto i : r.data.split.test_indices) is_test[i] = true;
  for (std::size_t i = 0; i < r.data.cleaned.size(); ++i) {
    samples += std::to_string(r.data.cleaned[i].quantity) + ',' +
               format_decimal(r.data.cleaned[i].time) + ',' +
               (is_test[i] ? "test" : "train") + '\n';
  }
  write_text_file(dir / "samples.csv", samples);
  write_text_file(dir / "comparison.csv", comparison_csv(r.comparison));

  std::string sweep = "depth,train_mse,r2,mse,mae,mdae,rmse\n";
  for (const auto& row : r.depth_sweep.rows) {
    sweep += std::to_string(row.depth) + ',' + format_decimal(row.train_mse) +
             ',' + format_decimal(row.test.r2) + ',' +
             format_decimal(row.test.mse) + ',' + format_decimal(row.test.mae) +
             ',' + format_decimal(row.test.medae) + ',' +
             format_decimal(row.test.rmse) + '\n';
  }
  write_text_file(dir / "depth_sweep.csv", sweep);

  std::string trace = "round,validation_rmse\n";
  const auto& vt = r.boost.validation_trace();
  for (std::size_t i = 0; i < vt.size(); ++i) {
    trace += std::to_string(i + 1) + ',' + format_decimal(vt[i]) + '\n';
  }
  write_text_file(dir / "boost_trace.csv", trace);

  const auto ts = times(r.data.cleaned);
  const auto qs = quantities(r.data.cleaned);
  const auto time_hist = histogram(ts, kHistogramBins);
  const auto quantity_hist = histogram(qs, kHistogramBins);
  write_text_file(dir / "histogram_time.csv", histogram_csv(time_hist));
  write_text_file(dir / "histogram_quantity.csv", histogram_csv(quantity_hist));
  write_text_file(dir / "boxplot.csv",
                  boxplot_csv({{"quantity", &r.quantity_box},
                               {"time", &r.time_box}}));
  write_text_file(dir / "report.json", athlete_report_metadata_json(r));
  write_text_file(dir / "curve.json",
                  curve_to_json({r.primary_curve().curve, r.primary_loss,
                                 r.athlete}));

  SvgChart chart;
  chart.title = (r.athlete.empty() ? std::string("Athlete") : r.athlete) +
                ": capped performance curves";
  chart.x_label = "time [s]";
  chart.y_label = "quantity [digits]";
  chart.series.push_back({"samples", SvgSeries::Style::kPoints, "#555555",
                          xy(ts, qs)});
  chart.series.push_back({"mean (mse) curve", SvgSeries::Style::kLine,
                          "#1f77b4", grid_xy(mean_grid)});
  chart.series.push_back({"median (medae) curve", SvgSeries::Style::kLine,
                          "#d62728", grid_xy(median_grid)});
  write_text_file(dir / "curves.svg", render_svg(chart));
  write_text_file(dir / "histogram_time.svg",
                  histogram_svg(time_hist, "Time distribution", "time [s]"));
  write_text_file(dir / "histogram_quantity.svg",
                  histogram_svg(quantity_hist, "Quantity distribution",
                                "quantity [digits]"));
}

void export_plot_data(const Task1Result& r, const std::filesystem::path& dir) {
  ensure_dir(dir);
  write_text_file(dir / "report.json", task1_report_json(r));
  write_text_file(dir / "plane.json", plane_to_json(r.model));
  write_text_file(dir / "cv_table.csv", cv_table_csv(r.cv));
  std::string preds = "score,correct_data,perfect,predicted\n";
  std::vector<double> actual, predicted;
  for (std::size_t i = 0; i < r.split.test_indices.size(); ++i) {
    const auto& rec = r.cleaned[r.split.test_indices[i]];
    preds += std::to_string(rec.score) + ',' + std::to_string(rec.correct_data) +
             ',' + std::to_string(rec.perfect) + ',' +
             format_decimal(r.test_predictions[i]) + '\n';
    actual.push_back(static_cast<double>(rec.perfect));
    predicted.push_back(r.test_predictions[i]);
  }
  write_text_file(dir / "test_predictions.csv", preds);

  SvgChart chart;
  chart.title = "Aim plane: predicted vs actual perfect score (test set)";
  chart.x_label = "actual perfect score";
  chart.y_label = "predicted aim";
  chart.series.push_back({"test rows", SvgSeries::Style::kPoints, "#333333",
                          xy(actual, predicted)});
  if (!actual.empty()) {
    const auto [lo, hi] = std::minmax_element(actual.begin(), actual.end());
    chart.series.push_back({"y = x", SvgSeries::Style::kLine, "#d62728",
                            {{*lo, *lo}, {*hi, *hi}}});
  }
  write_text_file(dir / "test_projection.svg", render_svg(chart));
}

void export_plot_data(const CrossoverReport& r,
                      const std::filesystem::path& dir) {
  ensure_dir(dir);
  std::string grid = "t,a_capped,b_capped,difference\n";
  for (std::size_t i = 0; i < r.grid.size(); ++i) {
    grid += format_decimal(r.grid[i]) + ',' + format_decimal(r.a_values[i]) +
            ',' + format_decimal(r.b_values[i]) + ',' +
            format_decimal(r.a_values[i] - r.b_values[i]) + '\n';
  }
  write_text_file(dir / "comparison_grid.csv", grid);
  std::string cross = "t_lo,t_hi\n";
  SvgChart chart;
  for (const auto& c : r.crossovers) {
    cross += format_decimal(c.t_lo) + ',' + format_decimal(c.t_hi) + '\n';
    chart.x_bands.emplace_back(c.t_lo, c.t_hi);
  }
  write_text_file(dir / "crossovers.csv", cross);
  chart.title = "Athlete comparison";
  chart.x_label = "time [s]";
  chart.y_label = "quantity [digits]";
  chart.series.push_back({"athlete A", SvgSeries::Style::kLine, "#1f77b4",
                          xy(r.grid, r.a_values)});
  chart.series.push_back({"athlete B", SvgSeries::Style::kLine, "#d62728",
                          xy(r.grid, r.b_values)});
  write_text_file(dir / "comparison.svg", render_svg(chart));
}

void export_plot_data(const ProgressReport& r,
                      const std::filesystem::path& dir, double step) {
  ensure_dir(dir);
  static const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                   "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};
  std::string csv = "slice,t,quantity_capped\n";
  SvgChart chart;
  chart.title = "Performance level over time";
  chart.x_label = "time [s]";
  chart.y_label = "quantity [digits]";
  // Shared grid: the union of the slices' fitted ranges is not tracked, so
  // use a fixed Memory League window.
  constexpr double kGridMin = 10.0;
  constexpr double kGridMax = 40.0;
  std::size_t colour = 0;
  for (const auto& s : r.slices) {
    const auto grid = evaluate_grid(s.curve.curve, kGridMin, kGridMax, step);
    for (const auto& p : grid) {
      csv += s.label + ',' + format_decimal(p.t) + ',' +
             format_decimal(p.value) + '\n';
    }
    chart.series.push_back({s.label, SvgSeries::Style::kLine,
                            kPalette[colour++ % std::size(kPalette)],
                            grid_xy(grid)});
  }
  write_text_file(dir / "progress.csv", csv);
  write_text_file(dir / "progress.json", progress_report_json(r));
  write_text_file(dir / "progress.svg", render_svg(chart));
}

}  // namespace memopace
