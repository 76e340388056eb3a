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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "memopace/error.h"
#include "memopace/random.h"
#include "test_support.h"

namespace memopace {
namespace {

using testing::uniform;

template <typename Fn>
ErrorCode code_of(Fn fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no memopace::Error thrown";
  return ErrorCode::kIoError;
}

double sse(std::span<const double> v) {
  if (v.empty()) return 0;
  const double m = std::accumulate(v.begin(), v.end(), 0.0) / v.size();
  double s = 0;
  for (double x : v) s += (x - m) * (x - m);
  return s;
}

double mse(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return s / a.size();
}

struct Data {
  DesignMatrix x;
  std::vector<double> y;
};

Data noisy_step(std::uint64_t seed, std::size_t n) {
  Rng rng(seed);
  Data d{DesignMatrix(n, 1), {}};
  for (std::size_t i = 0; i < n; ++i) {
    const double x = uniform(rng, 0, 10);
    d.x(i, 0) = x;
    d.y.push_back((x < 3 ? 5.0 : x < 7 ? 20.0 : 12.0) + uniform(rng, -1, 1));
  }
  return d;
}

Data saturating(std::uint64_t seed, std::size_t n) {
  Rng rng(seed);
  Data d{DesignMatrix(n, 1), {}};
  for (std::size_t i = 0; i < n; ++i) {
    const double t = uniform(rng, 12, 40);
    d.x(i, 0) = t;
    d.y.push_back(std::min(80.0, -900.0 / (t - 50.0)) + uniform(rng, -2, 2));
  }
  return d;
}

TEST(FitTree, ConstantTargetIsOneLeaf) {
  const DesignMatrix x{{1}, {2}, {3}, {4}};
  const auto t = fit_tree(x, std::vector<double>(4, 7.0), 5);
  EXPECT_EQ(t.leaf_count(), 1u);
  EXPECT_EQ(t.depth(), 0);
  const double probe[] = {100.0};
  EXPECT_EQ(t.predict(probe), 7.0);
}

TEST(FitTree, StumpMatchesBruteForce) {
  const std::vector<double> xs = {1, 2, 3, 4};
  const std::vector<double> y = {0, 0, 10, 10};
  // Oracle: try all three midpoints and keep the lowest child SSE.
  double best_threshold = 0, best_sse = INFINITY;
  for (std::size_t cut = 1; cut < xs.size(); ++cut) {
    const double s = sse(std::span(y).first(cut)) + sse(std::span(y).subspan(cut));
    if (s < best_sse) {
      best_sse = s;
      best_threshold = 0.5 * (xs[cut - 1] + xs[cut]);
    }
  }
  ASSERT_EQ(best_threshold, 2.5);

  const auto t = fit_tree(DesignMatrix::from_column(xs), y, 1);
  const auto& root = t.nodes()[0];
  EXPECT_EQ(root.feature, 0);
  EXPECT_EQ(root.threshold, best_threshold);
  const double a[] = {1.5}, b[] = {3.5}, tie[] = {2.5};
  EXPECT_EQ(t.predict(a), 0.0);
  EXPECT_EQ(t.predict(b), 10.0);
  EXPECT_EQ(t.predict(tie), 0.0);  // ties route left
}

TEST(FitTree, DepthErrors) {
  const DesignMatrix x{{1}, {2}};
  const std::vector<double> y = {1, 2};
  EXPECT_EQ(code_of([&] { fit_tree(x, y, 0); }), ErrorCode::kBadDepth);
  EXPECT_EQ(code_of([&] { fit_tree(DesignMatrix{{1}}, std::vector<double>{1}, 1); }),
            ErrorCode::kEmptyData);
}

TEST(FitTree, DeepTreeInterpolatesDistinctX) {
  for (std::size_t m : {2, 5, 16, 33}) {
    Rng rng(m);
    DesignMatrix x(m, 1);
    std::vector<double> y(m);
    for (std::size_t i = 0; i < m; ++i) {
      x(i, 0) = static_cast<double>(i) + uniform(rng, 0, 0.5);
      y[i] = uniform(rng, -10, 10);
    }
    // Greedy splits are not balanced, so only an unbounded tree is
    // guaranteed to isolate every point.
    const auto t = fit_tree(x, y, kUnlimitedDepth);
    EXPECT_LE(t.depth(), static_cast<int>(m) - 1);
    EXPECT_EQ(t.leaf_count(), m);
    EXPECT_EQ(t.predict(x), y);
  }
}

TEST(FitTree, WidthMismatch) {
  const auto t = fit_tree(DesignMatrix{{1, 2}, {2, 1}, {3, 3}},
                          std::vector<double>{1, 2, 3}, 2);
  const double narrow[] = {1.0};
  EXPECT_EQ(code_of([&] { t.predict(narrow); }), ErrorCode::kWidthMismatch);
}

TEST(FitTree, InvariantsProperty) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto d = noisy_step(seed, 60);
    const int depth = 1 + static_cast<int>(seed % 6);
    const int leaf = 1 + static_cast<int>(seed % 4);
    const auto t = fit_tree(d.x, d.y, depth, leaf);
    EXPECT_LE(t.depth(), depth);
    const auto [lo, hi] = std::minmax_element(d.y.begin(), d.y.end());
    // Leaf values are the means of the targets routed to them.
    std::vector<double> sum(t.nodes().size(), 0.0);
    std::vector<std::size_t> count(t.nodes().size(), 0);
    for (std::size_t i = 0; i < d.x.rows(); ++i) {
      const int leaf_id = t.leaf_index(d.x.row(i));
      sum[leaf_id] += d.y[i];
      ++count[leaf_id];
    }
    for (std::size_t n = 0; n < t.nodes().size(); ++n) {
      const auto& node = t.nodes()[n];
      if (node.feature >= 0) continue;
      ASSERT_GE(count[n], static_cast<std::size_t>(leaf));
      EXPECT_NEAR(node.value, sum[n] / count[n], 1e-9);
      EXPECT_GE(node.value, *lo);
      EXPECT_LE(node.value, *hi);
    }
  }
}

TEST(FitTree, PiecewiseConstantProperty) {
  const auto d = noisy_step(1, 80);
  const auto t = fit_tree(d.x, d.y, 4);
  Rng rng(2);
  for (int i = 0; i < 500; ++i) {
    const double a[] = {uniform(rng, -1, 11)};
    const double b[] = {uniform(rng, -1, 11)};
    if (t.leaf_index(a) == t.leaf_index(b)) {
      ASSERT_EQ(t.predict(a), t.predict(b));
    }
  }
}

TEST(FitTree, TrainingErrorNonIncreasingInDepth) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto d = saturating(seed, 100);
    double prev = INFINITY;
    for (int depth = 1; depth <= 10; ++depth) {
      const double e = mse(fit_tree(d.x, d.y, depth).predict(d.x), d.y);
      ASSERT_LE(e, prev + 1e-12);
      prev = e;
    }
  }
}

TEST(FitForest, SingleTreeWithoutBootstrapIsTree) {
  const auto d = saturating(3, 90);
  ForestOptions opts;
  opts.n_estimators = 1;
  opts.bootstrap = false;
  opts.max_depth = 5;
  const auto forest = fit_forest(d.x, d.y, opts);
  const auto tree = fit_tree(d.x, d.y, 5);
  for (double t = 5; t <= 45; t += 0.05) {
    const double probe[] = {t};
    ASSERT_EQ(forest.predict(probe), tree.predict(probe)) << t;
  }
}

TEST(FitForest, DeterminismRangeAndMean) {
  const auto d = saturating(4, 70);
  ForestOptions opts;
  opts.n_estimators = 25;
  opts.seed = 17;
  const auto a = fit_forest(d.x, d.y, opts);
  const auto b = fit_forest(d.x, d.y, opts);
  EXPECT_EQ(a.trees().size(), 25u);
  const auto [lo, hi] = std::minmax_element(d.y.begin(), d.y.end());
  for (double t = 0; t <= 50; t += 0.5) {
    const double probe[] = {t};
    const double p = a.predict(probe);
    ASSERT_EQ(p, b.predict(probe));
    ASSERT_GE(p, *lo);
    ASSERT_LE(p, *hi);
    double mean = 0;
    for (const auto& tree : a.trees()) mean += tree.predict(probe);
    mean /= a.trees().size();
    ASSERT_NEAR(p, mean, 1e-12);
  }
  opts.seed = 18;
  const auto c = fit_forest(d.x, d.y, opts);
  bool differs = false;
  for (double t = 12; t <= 40; t += 0.5) {
    const double probe[] = {t};
    differs |= c.predict(probe) != a.predict(probe);
  }
  EXPECT_TRUE(differs);
}

TEST(FitForest, Errors) {
  ForestOptions opts;
  opts.n_estimators = 0;
  EXPECT_EQ(code_of([&] {
              fit_forest(DesignMatrix{{1}, {2}}, std::vector<double>{1, 2}, opts);
            }),
            ErrorCode::kBadArgument);
}

TEST(FitBoost, UnitLearningRateInterpolates) {
  const std::size_t m = 40;
  Rng rng(12);
  DesignMatrix x(m, 1);
  std::vector<double> y(m);
  for (std::size_t i = 0; i < m; ++i) {
    x(i, 0) = i * 1.5;
    y[i] = uniform(rng, 0, 80);
  }
  BoostOptions opts;
  opts.learning_rate = 1.0;
  opts.max_rounds = 1;
  opts.max_depth = kUnlimitedDepth;
  const auto boost = fit_boost(x, y, x, y, opts);
  EXPECT_EQ(boost.rounds_run(), 1);
  const auto pred = boost.predict(x);
  for (std::size_t i = 0; i < m; ++i) EXPECT_NEAR(pred[i], y[i], 1e-9);
}

TEST(FitBoost, ZeroLearningRatePredictsBase) {
  const auto d = saturating(1, 60);
  BoostOptions opts;
  opts.learning_rate = 0.0;
  const auto boost = fit_boost(d.x, d.y, d.x, d.y, opts);
  const double base = std::accumulate(d.y.begin(), d.y.end(), 0.0) / d.y.size();
  EXPECT_NEAR(boost.base_prediction(), base, 1e-12);
  for (double p : boost.predict(d.x)) EXPECT_EQ(p, boost.base_prediction());
}

TEST(FitBoost, EarlyStoppingAndTraceShape) {
  const auto train = saturating(21, 200);
  const auto val = saturating(22, 50);
  BoostOptions opts;  // 0.3, 100 rounds, patience 10, depth 6
  const auto boost = fit_boost(train.x, train.y, val.x, val.y, opts);
  const auto& trace = boost.validation_trace();
  ASSERT_EQ(trace.size(), static_cast<std::size_t>(boost.rounds_run()));
  const auto best = std::min_element(trace.begin(), trace.end());
  EXPECT_EQ(boost.best_round(), 1 + static_cast<int>(best - trace.begin()));
  EXPECT_LE(boost.rounds_run(), boost.best_round() + opts.patience);
  if (boost.rounds_run() < opts.max_rounds) {
    EXPECT_EQ(boost.rounds_run(), boost.best_round() + opts.patience);
  }
  // Large initial drop, then a plateau.
  EXPECT_GT(trace.front(), 2.0 * *best);
  EXPECT_LT(trace[9], 1.2 * *best);

  // Prediction uses exactly best_round stages.
  for (std::size_t i = 0; i < val.x.rows(); ++i) {
    ASSERT_EQ(boost.predict(val.x.row(i)),
              boost.predict_rounds(val.x.row(i), boost.best_round()));
  }
}

TEST(FitBoost, PatienceBoundsRounds) {
  for (int patience : {1, 3, 5}) {
    const auto train = saturating(30 + patience, 120);
    const auto val = saturating(40 + patience, 30);
    BoostOptions opts;
    opts.patience = patience;
    const auto boost = fit_boost(train.x, train.y, val.x, val.y, opts);
    EXPECT_LE(boost.rounds_run(), boost.best_round() + patience);
  }
}

TEST(FitBoost, Errors) {
  const DesignMatrix x{{1}, {2}, {3}};
  const std::vector<double> y = {1, 2, 3};
  EXPECT_EQ(code_of([&] { fit_boost(x, y, DesignMatrix(0, 1), {}); }),
            ErrorCode::kEmptyData);
}

TEST(SweepDepth, MatchesExhaustiveOracle) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto train = noisy_step(seed, 120);
    const auto test = noisy_step(seed + 100, 40);
    const auto sweep = sweep_depth(train.x, train.y, test.x, test.y);
    ASSERT_EQ(sweep.rows.size(), 10u);
    int oracle_depth = 0;
    double oracle_mae = INFINITY;
    double prev_train = INFINITY;
    for (int depth = 1; depth <= 10; ++depth) {
      const auto tree = fit_tree(train.x, train.y, depth);
      const auto pred = tree.predict(test.x);
      double mae = 0;
      for (std::size_t i = 0; i < pred.size(); ++i) {
        mae += std::abs(test.y[i] - pred[i]);
      }
      mae /= pred.size();
      if (mae < oracle_mae) {
        oracle_mae = mae;
        oracle_depth = depth;
      }
      const auto& row = sweep.rows[depth - 1];
      EXPECT_EQ(row.depth, depth);
      EXPECT_NEAR(row.test.mae, mae, 1e-12);
      EXPECT_LE(row.train_mse, prev_train + 1e-12);
      prev_train = row.train_mse;
    }
    EXPECT_EQ(sweep.best_depth, oracle_depth);
  }
}

}  // namespace
}  // namespace memopace
