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

#ifndef MEMOPACE_TREES_H_
#define MEMOPACE_TREES_H_

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "memopace/linmod.h"

namespace memopace {

inline constexpr int kUnlimitedDepth = std::numeric_limits<int>::max();

// Regression tree stored as a flat node array; node 0 is the root.
// Routing: x[feature] <= threshold goes left.
class DecisionTree {
 public:
  struct Node {
    int feature = -1;  // -1 marks a leaf
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    double value = 0.0;  // mean of the training targets reaching the node
    std::size_t samples = 0;
  };

  DecisionTree() = default;
  DecisionTree(std::vector<Node> nodes, std::size_t n_features, int max_depth,
               int min_samples_leaf);

  double predict(std::span<const double> x) const;
  std::vector<double> predict(const DesignMatrix& x) const;

  // Index of the leaf `x` is routed to.
  int leaf_index(std::span<const double> x) const;

  const std::vector<Node>& nodes() const { return nodes_; }
  std::size_t n_features() const { return n_features_; }
  int max_depth() const { return max_depth_; }
  int min_samples_leaf() const { return min_samples_leaf_; }
  // Longest root-to-leaf path, in edges.
  int depth() const;
  std::size_t leaf_count() const;

 private:
  std::vector<Node> nodes_;
  std::size_t n_features_ = 0;
  int max_depth_ = 1;
  int min_samples_leaf_ = 1;
};

struct ForestOptions {
  int n_estimators = 100;
  std::uint64_t seed = 0;
  int max_depth = kUnlimitedDepth;
  int min_samples_leaf = 1;
  bool bootstrap = true;
};

class Forest {
 public:
  Forest() = default;
  Forest(std::vector<DecisionTree> trees, ForestOptions options);

  // Arithmetic mean of the member predictions.
  double predict(std::span<const double> x) const;
  std::vector<double> predict(const DesignMatrix& x) const;

  const std::vector<DecisionTree>& trees() const { return trees_; }
  const ForestOptions& options() const { return options_; }

 private:
  std::vector<DecisionTree> trees_;
  ForestOptions options_;
};

struct BoostOptions {
  double learning_rate = 0.3;
  int max_rounds = 100;
  int patience = 10;
  int max_depth = 6;
  int min_samples_leaf = 1;
};

class BoostedEnsemble {
 public:
  BoostedEnsemble() = default;
  BoostedEnsemble(double base_prediction, std::vector<DecisionTree> stages,
                  BoostOptions options, int best_round,
                  std::vector<double> validation_trace);

  // base + learning_rate * sum of the first best_round stages.
  double predict(std::span<const double> x) const;
  std::vector<double> predict(const DesignMatrix& x) const;
  // Same, truncated after `rounds` stages.
  double predict_rounds(std::span<const double> x, int rounds) const;

  double base_prediction() const { return base_prediction_; }
  const std::vector<DecisionTree>& stages() const { return stages_; }
  const BoostOptions& options() const { return options_; }
  // Number of stages kept, i.e. 1 + argmin of the validation trace.
  int best_round() const { return best_round_; }
  int rounds_run() const { return static_cast<int>(stages_.size()); }
  // Validation RMSE after each round.
  const std::vector<double>& validation_trace() const {
    return validation_trace_;
  }

 private:
  double base_prediction_ = 0.0;
  std::vector<DecisionTree> stages_;
  BoostOptions options_;
  int best_round_ = 0;
  std::vector<double> validation_trace_;
};

// Greedy variance-reduction CART. Candidate thresholds are midpoints between
// consecutive distinct feature values.
DecisionTree fit_tree(const DesignMatrix& x, std::span<const double> y,
                      int max_depth, int min_samples_leaf = 1);

// Each tree sees a bootstrap resample drawn from a generator seeded with
// derive_seed(seed, tree_index).
Forest fit_forest(const DesignMatrix& x, std::span<const double> y,
                  const ForestOptions& options);

// Squared-error gradient boosting with validation-based early stopping.
BoostedEnsemble fit_boost(const DesignMatrix& x_train,
                          std::span<const double> y_train,
                          const DesignMatrix& x_val,
                          std::span<const double> y_val,
                          const BoostOptions& options = {});

struct DepthSweepRow {
  int depth = 0;
  MetricReport test;
  double train_mse = 0.0;
};

struct DepthSweep {
  std::vector<DepthSweepRow> rows;
  int best_depth = 0;  // smallest depth attaining the minimum test MAE
};

DepthSweep sweep_depth(const DesignMatrix& x_train,
                       std::span<const double> y_train,
                       const DesignMatrix& x_test,
                       std::span<const double> y_test, int min_depth = 1,
                       int max_depth = 10);

}  // namespace memopace

#endif  // MEMOPACE_TREES_H_
