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

#include <benchmark/benchmark.h>

#include "memopace/curvefit.h"
#include "memopace/dataset.h"
#include "memopace/linmod.h"
#include "memopace/pipelines.h"
#include "memopace/trees.h"
#include "test_support.h"

namespace {

using namespace memopace;

void BM_FitOls(benchmark::State& state) {
  Rng rng(1);
  const auto n = static_cast<std::size_t>(state.range(0));
  DesignMatrix x(n, 2);
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    x(i, 0) = testing::uniform(rng, 100, 400);
    x(i, 1) = testing::uniform(rng, 300, 500);
    y[i] = 10 + 0.2 * x(i, 0) + 0.7 * x(i, 1) + testing::uniform(rng, -5, 5);
  }
  for (auto _ : state) benchmark::DoNotOptimize(fit_ols(x, y));
}
BENCHMARK(BM_FitOls)->Arg(133)->Arg(10000);

struct Series {
  std::vector<double> t, q;
};

Series athlete_series(std::size_t n) {
  Series s;
  for (const auto& m : testing::saturating_athlete(3, n)) {
    s.t.push_back(m.time);
    s.q.push_back(m.quantity);
  }
  return s;
}

void BM_FitHyperbolaLs(benchmark::State& state) {
  const auto s = athlete_series(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(fit_hyperbola_ls(s.t, s.q));
}
BENCHMARK(BM_FitHyperbolaLs)->Arg(150)->Arg(2000);

void BM_FitHyperbolaMedian(benchmark::State& state) {
  const auto s = athlete_series(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(fit_hyperbola_median(s.t, s.q));
}
BENCHMARK(BM_FitHyperbolaMedian)->Arg(150)->Arg(2000);

void BM_FitForest(benchmark::State& state) {
  const auto s = athlete_series(300);
  const auto x = DesignMatrix::from_column(s.t);
  ForestOptions opts;
  opts.n_estimators = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fit_forest(x, s.q, opts));
}
BENCHMARK(BM_FitForest)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_RunTask2(benchmark::State& state) {
  const auto samples = testing::saturating_athlete(5, 300);
  Task2Options opts;
  opts.forest_trees = 1000;
  for (auto _ : state) benchmark::DoNotOptimize(run_task2(samples, opts));
}
BENCHMARK(BM_RunTask2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
