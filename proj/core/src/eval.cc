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

#include "memopace/eval.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>

#include "memopace/error.h"
#include "memopace/random.h"

namespace memopace {
namespace {

void flag_minimum(const std::vector<ComparisonRow>& rows,
                  double (*column)(const ComparisonRow&),
                  std::vector<std::string>& out) {
  if (rows.empty()) return;
  double best = column(rows.front());
  for (const auto& r : rows) best = std::min(best, column(r));
  for (const auto& r : rows) {
    if (column(r) == best) out.push_back(r.model);
  }
  std::sort(out.begin(), out.end());
}

}  // namespace

std::vector<std::size_t> FoldAssignment::members(std::size_t fold) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < fold_of.size(); ++i) {
    if (fold_of[i] == fold) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> FoldAssignment::complement(std::size_t fold) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < fold_of.size(); ++i) {
    if (fold_of[i] != fold) out.push_back(i);
  }
  return out;
}

double round_half_up(double v) { return std::floor(v + 0.5); }

ModelRecipe ols_recipe(bool round_predictions) {
  return {round_predictions ? "linear_rounded" : "linear",
          [round_predictions](const DesignMatrix& x,
                              std::span<const double> y) -> Predictor {
            const auto model = fit_ols(x, y);
            return [model, round_predictions](const DesignMatrix& xs) {
              auto pred = predict_linear(model, xs);
              if (round_predictions) {
                for (auto& p : pred) p = round_half_up(p);
              }
              return pred;
            };
          }};
}

ModelRecipe mean_recipe() {
  return {"mean", [](const DesignMatrix&, std::span<const double> y) -> Predictor {
            const double mean = std::accumulate(y.begin(), y.end(), 0.0) /
                                static_cast<double>(y.size());
            return [mean](const DesignMatrix& xs) {
              return std::vector<double>(xs.rows(), mean);
            };
          }};
}

ModelRecipe tree_recipe(int max_depth) {
  return {"tree_depth_" + std::to_string(max_depth),
          [max_depth](const DesignMatrix& x,
                      std::span<const double> y) -> Predictor {
            auto tree = fit_tree(x, y, max_depth);
            return [tree = std::move(tree)](const DesignMatrix& xs) {
              return tree.predict(xs);
            };
          }};
}

FoldAssignment kfold_indices(std::size_t n, std::size_t k, std::uint64_t seed,
                             bool shuffle) {
  if (k < 2 || k > n) {
    throw Error(ErrorCode::kBadK, "k must satisfy 2 <= k <= n (k = " +
                                      std::to_string(k) + ", n = " +
                                      std::to_string(n) + ")");
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  if (shuffle) {
    Rng rng(seed);
    order = shuffled_indices(n, rng);
  }
  FoldAssignment folds;
  folds.k = k;
  folds.fold_of.assign(n, 0);
  const std::size_t base = n / k;
  const std::size_t extra = n % k;
  std::size_t pos = 0;
  for (std::size_t f = 0; f < k; ++f) {
    const std::size_t size = base + (f < extra ? 1 : 0);
    for (std::size_t j = 0; j < size; ++j) folds.fold_of[order[pos++]] = f;
  }
  return folds;
}

CvReport cross_validate(const ModelRecipe& recipe, const DesignMatrix& x,
                        std::span<const double> y, std::size_t k,
                        std::uint64_t seed, bool shuffle) {
  if (x.rows() != y.size()) {
    throw Error(ErrorCode::kLengthMismatch, "design rows and targets differ");
  }
  const auto folds = kfold_indices(y.size(), k, seed, shuffle);
  CvReport report;
  report.k = k;
  double r2_sum = 0.0;
  std::size_t r2_count = 0;
  for (std::size_t f = 0; f < k; ++f) {
    const auto train = folds.complement(f);
    const auto test = folds.members(f);
    try {
      const auto predictor =
          recipe.fit(x.select_rows(train), gather(y, train));
      const auto pred = predictor(x.select_rows(test));
      report.folds.push_back(compute_metrics(gather(y, test), pred));
    } catch (const Error& e) {
      throw Error(e.code(), "fold " + std::to_string(f) + " of " +
                                std::to_string(k) + " (" + recipe.name +
                                "): " + e.what());
    }
    const auto& m = report.folds.back();
    report.mse += m.mse;
    report.rmse += m.rmse;
    report.mae += m.mae;
    report.medae += m.medae;
    if (m.r2) {
      r2_sum += *m.r2;
      ++r2_count;
    }
  }
  const double kd = static_cast<double>(k);
  report.mse /= kd;
  report.rmse /= kd;
  report.mae /= kd;
  report.medae /= kd;
  if (r2_count > 0) report.r2 = r2_sum / static_cast<double>(r2_count);
  return report;
}

std::vector<CvSweepRow> cv_sweep(const ModelRecipe& recipe,
                                 const DesignMatrix& x,
                                 std::span<const double> y,
                                 std::size_t k_min, std::size_t k_max,
                                 std::uint64_t seed, bool shuffle) {
  if (k_min < 2 || k_max < k_min || k_max > y.size()) {
    throw Error(ErrorCode::kBadK, "sweep needs 2 <= k_min <= k_max <= n");
  }
  std::vector<CvSweepRow> rows;
  for (std::size_t k = k_min; k <= k_max; ++k) {
    const auto cv = cross_validate(recipe, x, y, k, seed, shuffle);
    rows.push_back({k, cv.r2, cv.mse, cv.rmse, cv.mae, cv.medae});
  }
  return rows;
}

const ComparisonRow* ComparisonTable::find(std::string_view model) const {
  for (const auto& r : rows) {
    if (r.model == model) return &r;
  }
  return nullptr;
}

ComparisonTable compare_models(std::span<const FittedModel> models,
                               const DesignMatrix& x_test,
                               std::span<const double> y_test,
                               bool integer_predictions) {
  ComparisonTable table;
  for (const auto& m : models) {
    auto pred = m.predict(x_test);
    if (pred.size() != y_test.size()) {
      throw Error(ErrorCode::kWidthMismatch,
                  m.name + " returned " + std::to_string(pred.size()) +
                      " predictions for " + std::to_string(y_test.size()) +
                      " test rows");
    }
    if (integer_predictions) {
      for (auto& p : pred) p = round_half_up(p);
    }
    table.rows.push_back({m.name, compute_metrics(y_test, pred), m.nonlinear});
  }
  flag_minimum(
      table.rows, [](const ComparisonRow& r) { return r.report.mse; },
      table.best_mse);
  flag_minimum(
      table.rows, [](const ComparisonRow& r) { return r.report.mae; },
      table.best_mae);
  flag_minimum(
      table.rows, [](const ComparisonRow& r) { return r.report.medae; },
      table.best_medae);
  flag_minimum(
      table.rows, [](const ComparisonRow& r) { return r.report.rmse; },
      table.best_rmse);
  return table;
}

std::string format_decimal(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string format_decimal(const std::optional<double>& v) {
  return v ? format_decimal(*v) : std::string();
}

std::string cv_table_csv(std::span<const CvSweepRow> rows) {
  std::string out = "k,r2,mse,rmse,mae,medae\n";
  for (const auto& r : rows) {
    out += std::to_string(r.k) + ',' + format_decimal(r.r2) + ',' +
           format_decimal(r.mse) + ',' + format_decimal(r.rmse) + ',' +
           format_decimal(r.mae) + ',' + format_decimal(r.medae) + '\n';
  }
  return out;
}

std::string comparison_csv(const ComparisonTable& table) {
  std::string out = "model,r2,mse,mae,mdae,rmse\n";
  for (const auto& r : table.rows) {
    out += r.model + ',' + format_decimal(r.report.r2) + ',' +
           format_decimal(r.report.mse) + ',' + format_decimal(r.report.mae) +
           ',' + format_decimal(r.report.medae) + ',' +
           format_decimal(r.report.rmse) + '\n';
  }
  return out;
}

}  // namespace memopace
