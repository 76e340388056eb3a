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

#ifndef MEMOPACE_PIPELINES_H_
#define MEMOPACE_PIPELINES_H_

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "memopace/curvefit.h"
#include "memopace/dataset.h"
#include "memopace/eval.h"
#include "memopace/linmod.h"
#include "memopace/trees.h"

namespace memopace {

// ---------------------------------------------------------------------------
// Aim calculator (IAM 5-minute Numbers)
// ---------------------------------------------------------------------------

enum class RoundingMode { kFloor, kNearest };

RoundingMode parse_rounding(std::string_view name);
std::string_view to_string(RoundingMode mode);

struct AimResult {
  std::int64_t aim = 0;
  double raw = 0.0;
  RoundingMode rounding = RoundingMode::kFloor;
};

// The reference plane: perfect = 11.843014003940112 + 0.1897767 * score
// + 0.72575744 * correct_data.
LinearModel published_plane();

// raw = intercept + c0 * score + c1 * correct_data, rounded per `mode` and
// clamped below at 0. Floor is the default because it reproduces the
// published reference table.
AimResult aim(const LinearModel& plane, std::int64_t score,
              std::int64_t correct_data,
              RoundingMode mode = RoundingMode::kFloor);

struct Task1Result {
  std::uint64_t seed = 0;
  double test_fraction = 0.2;
  std::size_t input_count = 0;
  std::vector<AttemptRecord> cleaned;
  SplitPair split;
  LinearModel model;
  std::vector<double> test_predictions;  // rounded
  MetricReport test;
  std::vector<CvSweepRow> cv;  // k = 2..9 on the whole cleaned set
};

// clean -> 80/20 random split -> OLS on (score, correct_data) -> rounded
// test predictions -> metrics -> cross-validation sweep.
Task1Result run_task1(std::span<const AttemptRecord> records,
                      std::uint64_t seed);

DesignMatrix task1_features(std::span<const AttemptRecord> records);
std::vector<double> task1_targets(std::span<const AttemptRecord> records);

// ---------------------------------------------------------------------------
// Athlete performance curves (Memory League Numbers)
// ---------------------------------------------------------------------------

struct Task2Options {
  std::string athlete;
  std::uint64_t seed = 0;
  double high_pct = 95.0;
  double low_pct = 1.0;
  std::size_t split_modulus = 5;
  int forest_trees = 1000;
  LossKind primary_loss = LossKind::kMedianAbsolute;
  FitOptions fit;
  BoostOptions boost;
};

// Cleaned, time-sorted samples and their ordered train/test split.
struct AthleteData {
  std::vector<MatchSample> cleaned;
  SplitPair split;
  std::vector<double> train_time, train_quantity;
  std::vector<double> test_time, test_quantity;
};

AthleteData prepare_athlete_data(std::span<const MatchSample> samples,
                                 const Task2Options& opts,
                                 std::size_t min_cleaned);

struct AthleteCurveReport {
  std::string athlete;
  std::uint64_t seed = 0;
  double high_pct = 95.0;
  double low_pct = 1.0;
  std::string split_description;  // "ordered modulus 5"
  LossKind primary_loss = LossKind::kMedianAbsolute;
  std::size_t input_count = 0;

  AthleteData data;
  double t_min = 0.0;  // cleaned time range
  double t_max = 0.0;

  HyperbolaFit mean_curve;
  HyperbolaFit median_curve;
  LinearModel linear;
  PolynomialModel polynomial;
  LogModel logarithmic;
  DepthSweep depth_sweep;
  DecisionTree tree;  // at depth_sweep.best_depth
  Forest forest;
  BoostedEnsemble boost;
  ComparisonTable comparison;

  SummaryStats time_stats;
  SummaryStats quantity_stats;
  BoxplotStats time_box;
  BoxplotStats quantity_box;

  const HyperbolaFit& curve(LossKind loss) const {
    return loss == LossKind::kSquared ? mean_curve : median_curve;
  }
  const HyperbolaFit& primary_curve() const { return curve(primary_loss); }
};

// Comparison-table row names.
inline constexpr std::string_view kLinearRow = "linear";
inline constexpr std::string_view kPolynomialRow = "polynomial";
inline constexpr std::string_view kLogRow = "logarithm";
inline constexpr std::string_view kHyperbolaMeanRow = "hyperbola_mse";
inline constexpr std::string_view kHyperbolaMedianRow = "hyperbola_medae";
inline constexpr std::string_view kTreeRow = "decision_tree";
inline constexpr std::string_view kForestRow = "random_forest";
inline constexpr std::string_view kBoostRow = "gradient_boosting";

// clean -> sort by time -> ordered split -> every model family -> one
// comparison table on the held-out fifth. Needs >= 20 cleaned samples.
AthleteCurveReport run_task2(std::span<const MatchSample> samples,
                             const Task2Options& opts);

// Median- or mean-loss curve fitted exactly as run_task2 fits it.
HyperbolaFit fit_athlete_curve(std::span<const MatchSample> samples,
                               const Task2Options& opts, LossKind loss,
                               std::size_t min_cleaned = 20);

struct CrossoverInterval {
  double t_lo = 0.0;  // last grid point with the old sign
  double t_hi = 0.0;  // first grid point with the new sign
};

struct CrossoverReport {
  std::vector<double> grid;
  std::vector<double> a_values;  // capped
  std::vector<double> b_values;  // capped
  std::vector<CrossoverInterval> crossovers;
};

// Grid cells where the sign of (A - B) flips. Exact ties (e.g. both capped)
// carry no sign and never create a crossover by themselves.
CrossoverReport compare_athletes(const HyperbolaCurve& a,
                                 const HyperbolaCurve& b, double t_min,
                                 double t_max, double step);

enum class SliceKind { kYearly, kWindow };

struct Slicing {
  SliceKind kind = SliceKind::kYearly;
  int window_days = 365;
};

// "yearly" or "window:<days>".
Slicing parse_slicing(std::string_view text);
std::string to_string(const Slicing& slicing);

inline constexpr std::size_t kMinSliceSamples = 20;

struct ProgressSlice {
  std::string label;
  std::chrono::year_month_day first_date;
  std::chrono::year_month_day last_date;
  std::size_t sample_count = 0;
  HyperbolaFit curve;  // median loss
};

struct ProgressReport {
  Slicing slicing;
  std::vector<ProgressSlice> slices;  // chronological, disjoint
};

// Slices with fewer than 20 samples are merged into the next slice (the
// last one into its predecessor).
ProgressReport progress_over_time(std::span<const MatchSample> samples,
                                  const Slicing& slicing,
                                  const Task2Options& opts = {});

// ---------------------------------------------------------------------------
// Serialization and plot export
// ---------------------------------------------------------------------------

// CSV "t,quantity_capped".
std::string curve_grid_csv(std::span<const CurvePoint> grid);

// Small JSON documents (deterministic key order, no timestamps).
std::string task1_report_json(const Task1Result& result);
std::string athlete_report_metadata_json(const AthleteCurveReport& report);
std::string crossover_report_json(const CrossoverReport& report);
std::string progress_report_json(const ProgressReport& report);

// Writes CSV grids and one SVG per chart into `dir` (created if needed).
// Output is byte-identical for identical input.
void export_plot_data(const AthleteCurveReport& report,
                      const std::filesystem::path& dir, double step = 0.1);
void export_plot_data(const Task1Result& result,
                      const std::filesystem::path& dir);
void export_plot_data(const CrossoverReport& report,
                      const std::filesystem::path& dir);
void export_plot_data(const ProgressReport& report,
                      const std::filesystem::path& dir, double step = 0.1);

void write_text_file(const std::filesystem::path& path,
                     std::string_view contents);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace memopace

#endif  // MEMOPACE_PIPELINES_H_
