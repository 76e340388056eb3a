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

#include "memopace/trees.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "memopace/error.h"
#include "memopace/random.h"

namespace memopace {
namespace {

void check_shapes(const DesignMatrix& x, std::span<const double> y) {
  if (x.rows() != y.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                "design rows and targets differ in length");
  }
}

class TreeBuilder {
 public:
  TreeBuilder(const DesignMatrix& x, std::span<const double> y, int max_depth,
              int min_samples_leaf)
      : x_(x), y_(y), max_depth_(max_depth),
        min_leaf_(static_cast<std::size_t>(min_samples_leaf)) {}

  DecisionTree build(std::vector<std::size_t> indices) {
    grow(std::move(indices), 0);
    return DecisionTree(std::move(nodes_), x_.cols(), max_depth_,
                        static_cast<int>(min_leaf_));
  }

 private:
  struct Split {
    int feature = -1;
    double threshold = 0.0;
    double child_sse = 0.0;
  };

  int grow(std::vector<std::size_t> indices, int depth) {
    const std::size_t n = indices.size();
    double sum = 0.0;
    for (auto i : indices) sum += y_[i];
    const double mean = sum / static_cast<double>(n);
    double sse = 0.0;
    for (auto i : indices) sse += (y_[i] - mean) * (y_[i] - mean);

    const int id = static_cast<int>(nodes_.size());
    nodes_.push_back({-1, 0.0, -1, -1, mean, n});

    if (depth >= max_depth_ || n < 2 * min_leaf_ || sse <= 0.0) return id;
    const auto split = best_split(indices, mean, sse);
    if (split.feature < 0) return id;

    std::vector<std::size_t> left, right;
    const auto f = static_cast<std::size_t>(split.feature);
    for (auto i : indices) {
      (x_(i, f) <= split.threshold ? left : right).push_back(i);
    }
    indices.clear();
    indices.shrink_to_fit();

    const int l = grow(std::move(left), depth + 1);
    const int r = grow(std::move(right), depth + 1);
    auto& node = nodes_[static_cast<std::size_t>(id)];
    node.feature = split.feature;
    node.threshold = split.threshold;
    node.left = l;
    node.right = r;
    return id;
  }

  // Lowest total child SSE over all features and midpoints; returns
  // feature -1 when nothing strictly improves on the parent.
  Split best_split(const std::vector<std::size_t>& indices, double mean,
                   double parent_sse) const {
    const std::size_t n = indices.size();
    Split best;
    best.child_sse = parent_sse * (1.0 - 1e-12);
    std::vector<std::size_t> order(indices);
    for (std::size_t f = 0; f < x_.cols(); ++f) {
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) {
                         return x_(a, f) < x_(b, f);
                       });
      double total = 0.0, total_sq = 0.0;
      for (auto i : order) {
        const double c = y_[i] - mean;
        total += c;
        total_sq += c * c;
      }
      double left = 0.0, left_sq = 0.0;
      for (std::size_t pos = 1; pos < n; ++pos) {
        const double c = y_[order[pos - 1]] - mean;
        left += c;
        left_sq += c * c;
        const double lo = x_(order[pos - 1], f);
        const double hi = x_(order[pos], f);
        if (!(lo < hi)) continue;
        if (pos < min_leaf_ || n - pos < min_leaf_) continue;
        const double nl = static_cast<double>(pos);
        const double nr = static_cast<double>(n - pos);
        const double right = total - left;
        const double right_sq = total_sq - left_sq;
        const double child = std::max(0.0, left_sq - left * left / nl) +
                             std::max(0.0, right_sq - right * right / nr);
        if (child < best.child_sse) {
          double threshold = lo + (hi - lo) / 2.0;
          if (!(threshold < hi)) threshold = lo;
          best = {static_cast<int>(f), threshold, child};
        }
      }
    }
    return best;
  }

  const DesignMatrix& x_;
  std::span<const double> y_;
  int max_depth_;
  std::size_t min_leaf_;
  std::vector<DecisionTree::Node> nodes_;
};

DecisionTree build_tree(const DesignMatrix& x, std::span<const double> y,
                        std::vector<std::size_t> indices, int max_depth,
                        int min_samples_leaf) {
  if (max_depth < 1) throw Error(ErrorCode::kBadDepth, "max_depth must be >= 1");
  if (min_samples_leaf < 1) {
    throw Error(ErrorCode::kBadArgument, "min_samples_leaf must be >= 1");
  }
  return TreeBuilder(x, y, max_depth, min_samples_leaf)
      .build(std::move(indices));
}

std::vector<std::size_t> all_indices(std::size_t n) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  return idx;
}

double rmse_of(std::span<const double> y, std::span<const double> pred) {
  double ss = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    ss += (y[i] - pred[i]) * (y[i] - pred[i]);
  }
  return std::sqrt(ss / static_cast<double>(y.size()));
}

template <typename Model>
std::vector<double> predict_rows(const Model& model, const DesignMatrix& x) {
  std::vector<double> out(x.rows());
  for (std::size_t i = 0; i < x.rows(); ++i) out[i] = model.predict(x.row(i));
  return out;
}

}  // namespace

DecisionTree::DecisionTree(std::vector<Node> nodes, std::size_t n_features,
                           int max_depth, int min_samples_leaf)
    : nodes_(std::move(nodes)), n_features_(n_features),
      max_depth_(max_depth), min_samples_leaf_(min_samples_leaf) {
  if (nodes_.empty()) throw Error(ErrorCode::kEmptyData, "tree has no nodes");
}

int DecisionTree::leaf_index(std::span<const double> x) const {
  if (x.size() != n_features_) {
    throw Error(ErrorCode::kWidthMismatch,
                "tree expects " + std::to_string(n_features_) +
                    " features, got " + std::to_string(x.size()));
  }
  int id = 0;
  while (nodes_[static_cast<std::size_t>(id)].feature >= 0) {
    const auto& node = nodes_[static_cast<std::size_t>(id)];
    id = x[static_cast<std::size_t>(node.feature)] <= node.threshold
             ? node.left
             : node.right;
  }
  return id;
}

double DecisionTree::predict(std::span<const double> x) const {
  return nodes_[static_cast<std::size_t>(leaf_index(x))].value;
}

std::vector<double> DecisionTree::predict(const DesignMatrix& x) const {
  return predict_rows(*this, x);
}

int DecisionTree::depth() const {
  std::vector<int> level(nodes_.size(), 0);
  int deepest = 0;
  // Children are always appended after their parent.
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const auto& node = nodes_[i];
    deepest = std::max(deepest, level[i]);
    if (node.feature >= 0) {
      level[static_cast<std::size_t>(node.left)] = level[i] + 1;
      level[static_cast<std::size_t>(node.right)] = level[i] + 1;
    }
  }
  return deepest;
}

std::size_t DecisionTree::leaf_count() const {
  return static_cast<std::size_t>(
      std::count_if(nodes_.begin(), nodes_.end(),
                    [](const Node& n) { return n.feature < 0; }));
}

Forest::Forest(std::vector<DecisionTree> trees, ForestOptions options)
    : trees_(std::move(trees)), options_(options) {
  if (trees_.empty()) throw Error(ErrorCode::kEmptyData, "forest has no trees");
}

double Forest::predict(std::span<const double> x) const {
  double sum = 0.0;
  for (const auto& tree : trees_) sum += tree.predict(x);
  return sum / static_cast<double>(trees_.size());
}

std::vector<double> Forest::predict(const DesignMatrix& x) const {
  return predict_rows(*this, x);
}

BoostedEnsemble::BoostedEnsemble(double base_prediction,
                                 std::vector<DecisionTree> stages,
                                 BoostOptions options, int best_round,
                                 std::vector<double> validation_trace)
    : base_prediction_(base_prediction), stages_(std::move(stages)),
      options_(options), best_round_(best_round),
      validation_trace_(std::move(validation_trace)) {
  if (best_round_ < 0 || best_round_ > static_cast<int>(stages_.size())) {
    throw Error(ErrorCode::kBadArgument, "best_round outside stage range");
  }
}

double BoostedEnsemble::predict_rounds(std::span<const double> x,
                                       int rounds) const {
  double value = base_prediction_;
  const int n = std::min(rounds, static_cast<int>(stages_.size()));
  for (int i = 0; i < n; ++i) {
    value += options_.learning_rate *
             stages_[static_cast<std::size_t>(i)].predict(x);
  }
  return value;
}

double BoostedEnsemble::predict(std::span<const double> x) const {
  return predict_rounds(x, best_round_);
}

std::vector<double> BoostedEnsemble::predict(const DesignMatrix& x) const {
  return predict_rows(*this, x);
}

DecisionTree fit_tree(const DesignMatrix& x, std::span<const double> y,
                      int max_depth, int min_samples_leaf) {
  check_shapes(x, y);
  if (y.size() < 2) throw Error(ErrorCode::kEmptyData, "need >= 2 rows");
  return build_tree(x, y, all_indices(y.size()), max_depth, min_samples_leaf);
}

Forest fit_forest(const DesignMatrix& x, std::span<const double> y,
                  const ForestOptions& options) {
  check_shapes(x, y);
  if (y.size() < 2) throw Error(ErrorCode::kEmptyData, "need >= 2 rows");
  if (options.n_estimators < 1) {
    throw Error(ErrorCode::kBadArgument, "n_estimators must be >= 1");
  }
  const std::size_t m = y.size();
  std::vector<DecisionTree> trees;
  trees.reserve(static_cast<std::size_t>(options.n_estimators));
  for (int t = 0; t < options.n_estimators; ++t) {
    std::vector<std::size_t> sample;
    if (options.bootstrap) {
      Rng rng(derive_seed(options.seed, static_cast<std::uint64_t>(t)));
      sample.resize(m);
      for (auto& s : sample) s = rng.uniform_index(m);
    } else {
      sample = all_indices(m);
    }
    trees.push_back(build_tree(x, y, std::move(sample), options.max_depth,
                               options.min_samples_leaf));
  }
  return Forest(std::move(trees), options);
}

BoostedEnsemble fit_boost(const DesignMatrix& x_train,
                          std::span<const double> y_train,
                          const DesignMatrix& x_val,
                          std::span<const double> y_val,
                          const BoostOptions& options) {
  check_shapes(x_train, y_train);
  check_shapes(x_val, y_val);
  if (y_train.empty() || y_val.empty()) {
    throw Error(ErrorCode::kEmptyData, "boosting needs train and validation rows");
  }
  if (x_val.cols() != x_train.cols()) {
    throw Error(ErrorCode::kWidthMismatch, "validation width differs");
  }
  if (options.max_rounds < 1 || options.patience < 1 ||
      !(options.learning_rate >= 0.0)) {
    throw Error(ErrorCode::kBadArgument, "invalid boosting options");
  }

  const double base =
      std::accumulate(y_train.begin(), y_train.end(), 0.0) /
      static_cast<double>(y_train.size());
  std::vector<double> fit_train(y_train.size(), base);
  std::vector<double> fit_val(y_val.size(), base);
  std::vector<double> residual(y_train.size());
  std::vector<DecisionTree> stages;
  std::vector<double> trace;
  int best_round = 0;
  double best_rmse = std::numeric_limits<double>::infinity();

  for (int round = 1; round <= options.max_rounds; ++round) {
    for (std::size_t i = 0; i < y_train.size(); ++i) {
      residual[i] = y_train[i] - fit_train[i];
    }
    auto tree = build_tree(x_train, residual, all_indices(y_train.size()),
                           options.max_depth, options.min_samples_leaf);
    for (std::size_t i = 0; i < y_train.size(); ++i) {
      fit_train[i] += options.learning_rate * tree.predict(x_train.row(i));
    }
    for (std::size_t i = 0; i < y_val.size(); ++i) {
      fit_val[i] += options.learning_rate * tree.predict(x_val.row(i));
    }
    stages.push_back(std::move(tree));
    const double rmse = rmse_of(y_val, fit_val);
    trace.push_back(rmse);
    if (rmse < best_rmse) {
      best_rmse = rmse;
      best_round = round;
    }
    if (round - best_round >= options.patience) break;
  }
  return BoostedEnsemble(base, std::move(stages), options, best_round,
                         std::move(trace));
}

DepthSweep sweep_depth(const DesignMatrix& x_train,
                       std::span<const double> y_train,
                       const DesignMatrix& x_test,
                       std::span<const double> y_test, int min_depth,
                       int max_depth) {
  if (min_depth < 1 || max_depth < min_depth) {
    throw Error(ErrorCode::kBadDepth, "depth range must satisfy 1 <= min <= max");
  }
  DepthSweep sweep;
  double best_mae = std::numeric_limits<double>::infinity();
  for (int d = min_depth; d <= max_depth; ++d) {
    const auto tree = fit_tree(x_train, y_train, d);
    DepthSweepRow row;
    row.depth = d;
    row.test = compute_metrics(y_test, tree.predict(x_test));
    row.train_mse = compute_metrics(y_train, tree.predict(x_train)).mse;
    if (row.test.mae < best_mae) {
      best_mae = row.test.mae;
      sweep.best_depth = d;
    }
    sweep.rows.push_back(std::move(row));
  }
  return sweep;
}

}  // namespace memopace
