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

#include "memopace/linmod.h"

#include <gtest/gtest.h>

#include <array>
#include <cmath>

#include "memopace/error.h"
#include "memopace/random.h"
#include "test_support.h"

namespace memopace {
namespace {

using testing::relative_error;
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

// Explicit normal-equation solve for an intercept plus two features:
// build the 3x3 system (A^T A) theta = A^T y and apply Cramer's rule in
// long double.
std::array<double, 3> normal_equation_oracle(
    const std::vector<std::array<double, 2>>& x, const std::vector<double>& y) {
  long double m[3][3] = {};
  long double v[3] = {};
  for (std::size_t i = 0; i < x.size(); ++i) {
    const long double row[3] = {1.0L, x[i][0], x[i][1]};
    for (int r = 0; r < 3; ++r) {
      v[r] += row[r] * y[i];
      for (int c = 0; c < 3; ++c) m[r][c] += row[r] * row[c];
    }
  }
  auto det = [](const long double a[3][3]) {
    return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
           a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
           a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
  };
  const long double d = det(m);
  std::array<double, 3> out{};
  for (int k = 0; k < 3; ++k) {
    long double mk[3][3];
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) mk[r][c] = c == k ? v[r] : m[r][c];
    }
    out[k] = static_cast<double>(det(mk) / d);
  }
  return out;
}

TEST(FitOls, TwoPointInterpolation) {
  const DesignMatrix x{{0}, {1}};
  const std::vector<double> y = {1, 2};
  const auto m = fit_ols(x, y);
  EXPECT_NEAR(m.intercept, 1.0, 1e-14);
  ASSERT_EQ(m.coefficients.size(), 1u);
  EXPECT_NEAR(m.coefficients[0], 1.0, 1e-14);
}

TEST(FitOls, ConstantTarget) {
  const DesignMatrix x{{1, 5}, {2, 3}, {3, 9}, {4, 1}, {7, 7}};
  const std::vector<double> y(5, 42.0);
  const auto m = fit_ols(x, y);
  EXPECT_NEAR(m.intercept, 42.0, 1e-10);
  EXPECT_NEAR(m.coefficients[0], 0.0, 1e-10);
  EXPECT_NEAR(m.coefficients[1], 0.0, 1e-10);
}

TEST(FitOls, SixAttemptRowsMatchNormalEquations) {
  const std::vector<std::array<double, 2>> feats = {
      {340, 396}, {280, 452}, {292, 417}, {360, 427}, {362, 399}, {322, 394}};
  const std::vector<double> y = {378, 378, 378, 378, 378, 360};
  DesignMatrix x(feats.size(), 2);
  for (std::size_t i = 0; i < feats.size(); ++i) {
    x(i, 0) = feats[i][0];
    x(i, 1) = feats[i][1];
  }
  const auto m = fit_ols(x, y);
  const auto oracle = normal_equation_oracle(feats, y);
  EXPECT_LE(relative_error(m.intercept, oracle[0]), 1e-9);
  EXPECT_LE(relative_error(m.coefficients[0], oracle[1]), 1e-9);
  EXPECT_LE(relative_error(m.coefficients[1], oracle[2]), 1e-9);
}

TEST(FitOls, ResidualsOrthogonalProperty) {
  Rng rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t m = 5 + rng.uniform_index(30);
    DesignMatrix x(m, 3);
    std::vector<double> y(m);
    double norm = 0;
    for (std::size_t i = 0; i < m; ++i) {
      for (int c = 0; c < 3; ++c) x(i, c) = uniform(rng, -10, 10);
      y[i] = uniform(rng, -50, 50);
      norm += y[i] * y[i];
    }
    norm = std::sqrt(norm);
    const auto model = fit_ols(x, y);
    const auto pred = predict_linear(model, x);
    double sum = 0;
    std::array<double, 3> dots{};
    for (std::size_t i = 0; i < m; ++i) {
      const double r = y[i] - pred[i];
      sum += r;
      for (int c = 0; c < 3; ++c) dots[c] += r * x(i, c);
    }
    ASSERT_LE(std::abs(sum), 1e-8 * norm);
    for (double d : dots) ASSERT_LE(std::abs(d), 1e-8 * norm * 10);
  }
}

TEST(FitOls, RankDeficient) {
  const DesignMatrix collinear{{1, 2}, {2, 4}, {3, 6}, {4, 8}};
  const std::vector<double> y = {1, 2, 3, 5};
  EXPECT_EQ(code_of([&] { fit_ols(collinear, y); }), ErrorCode::kRankDeficient);
  const DesignMatrix too_few{{1, 2}, {3, 5}};
  EXPECT_EQ(code_of([&] { fit_ols(too_few, std::vector<double>{1, 2}); }),
            ErrorCode::kRankDeficient);
  const DesignMatrix constant_col{{1}, {1}, {1}};
  EXPECT_EQ(code_of([&] { fit_ols(constant_col, std::vector<double>{1, 2, 3}); }),
            ErrorCode::kRankDeficient);
}

TEST(FitOls, LengthMismatch) {
  const DesignMatrix x{{1}, {2}, {3}};
  EXPECT_EQ(code_of([&] { fit_ols(x, std::vector<double>{1, 2}); }),
            ErrorCode::kLengthMismatch);
}

TEST(FitWls, UniformWeightsEqualOls) {
  Rng rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t m = 6 + rng.uniform_index(20);
    DesignMatrix x(m, 2);
    std::vector<double> y(m);
    for (std::size_t i = 0; i < m; ++i) {
      x(i, 0) = uniform(rng, 0, 100);
      x(i, 1) = uniform(rng, 0, 100);
      y[i] = uniform(rng, 0, 500);
    }
    const auto a = fit_ols(x, y);
    const auto b = fit_wls(x, y, std::vector<double>(m, 1.0));
    ASSERT_LE(relative_error(b.intercept, a.intercept), 1e-12);
    for (int c = 0; c < 2; ++c) {
      ASSERT_LE(relative_error(b.coefficients[c], a.coefficients[c]), 1e-12);
    }
  }
}

TEST(FitWls, HeavyPointMatchesClosedForm) {
  const std::vector<double> xs = {0, 1, 2, 3};
  const std::vector<double> ys = {0, 1, 5, 2};
  const std::vector<double> w = {1, 1, 1e6, 1};
  // One-feature weighted least squares by hand.
  double sw = 0, sx = 0, sy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sw += w[i];
    sx += w[i] * xs[i];
    sy += w[i] * ys[i];
  }
  const double xbar = sx / sw, ybar = sy / sw;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += w[i] * (xs[i] - xbar) * (ys[i] - ybar);
    sxx += w[i] * (xs[i] - xbar) * (xs[i] - xbar);
  }
  const double slope = sxy / sxx;
  const double intercept = ybar - slope * xbar;

  const auto m = fit_wls(DesignMatrix::from_column(xs), ys, w);
  EXPECT_LE(relative_error(m.coefficients[0], slope), 1e-9);
  EXPECT_LE(relative_error(m.intercept, intercept), 1e-9);
  EXPECT_NEAR(m.intercept + m.coefficients[0] * 2, 5.0, 1e-3);
}

TEST(FitWls, NonPositiveWeight) {
  const DesignMatrix x{{0}, {1}, {2}};
  const std::vector<double> y = {0, 1, 2};
  EXPECT_EQ(code_of([&] { fit_wls(x, y, std::vector<double>{1, 0, 1}); }),
            ErrorCode::kNonPositiveWeight);
  EXPECT_EQ(code_of([&] { fit_wls(x, y, std::vector<double>{1, -2, 1}); }),
            ErrorCode::kNonPositiveWeight);
}

TEST(ExpandPolynomial, Columns) {
  const auto x = expand_polynomial(std::vector<double>{2}, 3);
  ASSERT_EQ(x.cols(), 3u);
  EXPECT_EQ(x(0, 0), 2);
  EXPECT_EQ(x(0, 1), 4);
  EXPECT_EQ(x(0, 2), 8);
  const std::vector<double> v = {1, 2, 3};
  EXPECT_EQ(expand_polynomial(v, 1), DesignMatrix::from_column(v));
  EXPECT_EQ(code_of([&] { expand_polynomial(v, 0); }), ErrorCode::kBadDegree);
}

TEST(FitPolynomial, NoiseFreeRecovery) {
  std::vector<double> x, y;
  for (int i = 0; i < 10; ++i) {
    x.push_back(i * 0.7 - 2);
    y.push_back(1 + 2 * x.back() + 3 * x.back() * x.back());
  }
  const auto m = fit_polynomial(x, y, 2);
  EXPECT_NEAR(m.linear.intercept, 1, 1e-8);
  EXPECT_NEAR(m.linear.coefficients[0], 2, 1e-8);
  EXPECT_NEAR(m.linear.coefficients[1], 3, 1e-8);
  EXPECT_NEAR(m.predict(1.5), 1 + 3 + 6.75, 1e-8);
}

TEST(FitLog, NoiseFreeRecovery) {
  std::vector<double> x, y;
  for (int i = 1; i <= 20; ++i) {
    x.push_back(i);
    y.push_back(2 + 3 * std::log(i));
  }
  const auto m = fit_log(x, y);
  EXPECT_NEAR(m.a, 2, 1e-9);
  EXPECT_NEAR(m.b, 3, 1e-9);
}

TEST(FitLog, ConstantAndErrors) {
  const std::vector<double> x = {1, 2, 3, 4};
  const auto m = fit_log(x, std::vector<double>{5, 5, 5, 5});
  EXPECT_NEAR(m.b, 0, 1e-12);
  EXPECT_NEAR(m.a, 5, 1e-12);
  EXPECT_EQ(code_of([] {
              fit_log(std::vector<double>{0, 1, 2}, std::vector<double>{1, 2, 3});
            }),
            ErrorCode::kNonPositiveInput);
}

TEST(PredictLinear, PublishedPlane) {
  const LinearModel plane{11.843014003940112, {0.1897767, 0.72575744}};
  const double row[] = {120, 196};
  EXPECT_NEAR(predict_linear(plane, row), 176.8646762439401, 1e-9);
  const LinearModel zero{7.5, {0, 0}};
  EXPECT_EQ(predict_linear(zero, row), 7.5);
  const double wide[] = {1, 2, 3};
  EXPECT_EQ(code_of([&] { predict_linear(plane, wide); }),
            ErrorCode::kWidthMismatch);
  EXPECT_EQ(code_of([&] { predict_linear(plane, DesignMatrix{{1}}); }),
            ErrorCode::kWidthMismatch);
}

TEST(PredictLinear, AffineProperty) {
  Rng rng(6);
  const LinearModel m{3.5, {-1.25, 0.5, 2.0}};
  for (int trial = 0; trial < 200; ++trial) {
    std::array<double, 3> a{}, b{}, mix{};
    const double alpha = uniform(rng, -2, 2);
    for (int c = 0; c < 3; ++c) {
      a[c] = uniform(rng, -100, 100);
      b[c] = uniform(rng, -100, 100);
      mix[c] = alpha * a[c] + (1 - alpha) * b[c];
    }
    const double want =
        alpha * predict_linear(m, a) + (1 - alpha) * predict_linear(m, b);
    ASSERT_NEAR(predict_linear(m, mix), want, 1e-9 * (1 + std::abs(want)));
  }
}

TEST(PredictLinear, ReproducesTrainingFit) {
  const DesignMatrix x{{1, 0}, {0, 1}, {1, 1}, {2, 3}, {4, 1}};
  const std::vector<double> y = {1, 2, 2, 7, 4};
  const auto m = fit_ols(x, y);
  const auto p = predict_linear(m, x);
  for (std::size_t i = 0; i < x.rows(); ++i) {
    EXPECT_EQ(p[i], predict_linear(m, x.row(i)));
  }
}

TEST(ComputeMetrics, HandArithmetic) {
  const auto r = compute_metrics(std::vector<double>{3, -4},
                                 std::vector<double>{0, 0});
  EXPECT_DOUBLE_EQ(r.mse, 12.5);
  EXPECT_NEAR(r.rmse, 3.5355339059327378, 1e-15);
  EXPECT_DOUBLE_EQ(r.mae, 3.5);
  EXPECT_DOUBLE_EQ(r.medae, 3.5);
  EXPECT_EQ(r.residuals, (std::vector<double>{3, -4}));
}

TEST(ComputeMetrics, PerfectAndMean) {
  const std::vector<double> y = {1, 4, 2, 8};
  const auto perfect = compute_metrics(y, y);
  EXPECT_EQ(perfect.mse, 0);
  EXPECT_EQ(perfect.mae, 0);
  EXPECT_EQ(perfect.medae, 0);
  EXPECT_EQ(perfect.r2, 1.0);
  const auto flat = compute_metrics(y, std::vector<double>(4, 15.0 / 4));
  ASSERT_TRUE(flat.r2.has_value());
  EXPECT_NEAR(*flat.r2, 0.0, 1e-15);
}

TEST(ComputeMetrics, ConstantTargetHasNoR2) {
  const auto r = compute_metrics(std::vector<double>{5, 5, 5},
                                 std::vector<double>{4, 5, 6});
  EXPECT_FALSE(r.r2.has_value());
  EXPECT_NEAR(r.mse, 2.0 / 3.0, 1e-15);
}

TEST(ComputeMetrics, NegativeR2Allowed) {
  const auto r = compute_metrics(std::vector<double>{1, 2, 3},
                                 std::vector<double>{3, 2, 1});
  EXPECT_LT(*r.r2, 0.0);
}

TEST(ComputeMetrics, Errors) {
  EXPECT_EQ(code_of([] {
              compute_metrics(std::vector<double>{1, 2}, std::vector<double>{1});
            }),
            ErrorCode::kLengthMismatch);
  EXPECT_EQ(code_of([] { compute_metrics({}, {}); }), ErrorCode::kEmptyInput);
}

TEST(ComputeMetrics, IdentitiesProperty) {
  Rng rng(99);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + rng.uniform_index(50);
    std::vector<double> t(n), p(n);
    double max_abs = 0;
    for (std::size_t i = 0; i < n; ++i) {
      t[i] = uniform(rng, -100, 100);
      p[i] = t[i] + uniform(rng, -20, 20);
      max_abs = std::max(max_abs, std::abs(t[i] - p[i]));
    }
    const auto r = compute_metrics(t, p);
    ASSERT_LE(relative_error(r.rmse * r.rmse, r.mse), 1e-12);
    ASSERT_LE(r.mae, r.rmse * (1 + 1e-15));
    ASSERT_LE(r.medae, max_abs);
    ASSERT_GE(r.mse, 0);
    if (r.r2) ASSERT_LE(*r.r2, 1.0);
  }
}

TEST(Median, OddEven) {
  EXPECT_EQ(median(std::vector<double>{3, 1, 2}), 2);
  EXPECT_EQ(median(std::vector<double>{4, 1, 3, 2}), 2.5);
}

TEST(DesignMatrix, Helpers) {
  const std::vector<double> a = {1, 2, 3}, b = {4, 5, 6};
  const auto x = DesignMatrix::from_columns({a, b});
  EXPECT_EQ(x.rows(), 3u);
  EXPECT_EQ(x(2, 1), 6);
  EXPECT_EQ(x.column(0), a);
  const std::size_t idx[] = {2, 0};
  const auto s = x.select_rows(idx);
  EXPECT_EQ(s(0, 0), 3);
  EXPECT_EQ(s(1, 1), 4);
  EXPECT_EQ(gather(b, idx), (std::vector<double>{6, 4}));
}

}  // namespace
}  // namespace memopace
