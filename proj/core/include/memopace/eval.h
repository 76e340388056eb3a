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

#ifndef MEMOPACE_EVAL_H_
#define MEMOPACE_EVAL_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "memopace/linmod.h"
#include "memopace/trees.h"

namespace memopace {

struct FoldAssignment {
  std::size_t k = 0;
  std::vector<std::size_t> fold_of;  // per observation, in [0, k)

  std::vector<std::size_t> members(std::size_t fold) const;
  std::vector<std::size_t> complement(std::size_t fold) const;
};

// A fitted model reduced to its prediction function.
using Predictor = std::function<std::vector<double>(const DesignMatrix&)>;

// A named, parameterized fit procedure that cross-validation can rerun on
// every fold.
struct ModelRecipe {
  std::string name;
  std::function<Predictor(const DesignMatrix&, std::span<const double>)> fit;
};

ModelRecipe ols_recipe(bool round_predictions = false);
ModelRecipe mean_recipe();
ModelRecipe tree_recipe(int max_depth);

struct CvReport {
  std::size_t k = 0;
  std::vector<MetricReport> folds;
  // Means across folds. r2 averages the folds where it is defined.
  std::optional<double> r2;
  double mse = 0.0;
  double rmse = 0.0;
  double mae = 0.0;
  double medae = 0.0;
};

struct CvSweepRow {
  std::size_t k = 0;
  std::optional<double> r2;
  double mse = 0.0;
  double rmse = 0.0;
  double mae = 0.0;
  double medae = 0.0;
};

struct ComparisonRow {
  std::string model;
  MetricReport report;
  bool nonlinear = false;  // R^2 is not meaningful for this row
};

struct ComparisonTable {
  std::vector<ComparisonRow> rows;
  // Names of the rows attaining each column minimum (all of them on ties).
  std::vector<std::string> best_mse;
  std::vector<std::string> best_mae;
  std::vector<std::string> best_medae;
  std::vector<std::string> best_rmse;

  const ComparisonRow* find(std::string_view model) const;
};

struct FittedModel {
  std::string name;
  Predictor predict;
  bool nonlinear = false;
};

// Optional seeded permutation, then contiguous chunks; the first n % k folds
// have one extra member.
FoldAssignment kfold_indices(std::size_t n, std::size_t k, std::uint64_t seed,
                             bool shuffle = true);

CvReport cross_validate(const ModelRecipe& recipe, const DesignMatrix& x,
                        std::span<const double> y, std::size_t k,
                        std::uint64_t seed, bool shuffle = true);

std::vector<CvSweepRow> cv_sweep(const ModelRecipe& recipe,
                                 const DesignMatrix& x,
                                 std::span<const double> y,
                                 std::size_t k_min, std::size_t k_max,
                                 std::uint64_t seed, bool shuffle = true);

// Evaluates every model on the same test set. With integer_predictions the
// predictions are rounded half up before scoring.
ComparisonTable compare_models(std::span<const FittedModel> models,
                               const DesignMatrix& x_test,
                               std::span<const double> y_test,
                               bool integer_predictions = false);

double round_half_up(double v);

// CSV: "k,r2,mse,rmse,mae,medae".
std::string cv_table_csv(std::span<const CvSweepRow> rows);
// CSV: "model,r2,mse,mae,mdae,rmse".
std::string comparison_csv(const ComparisonTable& table);

// Shortest round-trip decimal form; "" for an empty optional.
std::string format_decimal(double v);
std::string format_decimal(const std::optional<double>& v);

}  // namespace memopace

#endif  // MEMOPACE_EVAL_H_
