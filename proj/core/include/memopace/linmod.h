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

#ifndef MEMOPACE_LINMOD_H_
#define MEMOPACE_LINMOD_H_

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

namespace memopace {

// Dense row-major observations x features matrix. No constant column: the
// fitters add the intercept themselves.
class DesignMatrix {
 public:
  DesignMatrix() = default;
  DesignMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}
  DesignMatrix(std::initializer_list<std::initializer_list<double>> rows);

  static DesignMatrix from_column(std::span<const double> column);
  static DesignMatrix from_columns(
      std::initializer_list<std::span<const double>> columns);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }
  double& operator()(std::size_t r, std::size_t c) {
    return data_[r * cols_ + c];
  }
  std::span<const double> row(std::size_t r) const {
    return std::span(data_).subspan(r * cols_, cols_);
  }
  std::vector<double> column(std::size_t c) const;

  DesignMatrix select_rows(std::span<const std::size_t> indices) const;

  friend bool operator==(const DesignMatrix&, const DesignMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

std::vector<double> gather(std::span<const double> values,
                           std::span<const std::size_t> indices);

struct LinearModel {
  double intercept = 0.0;
  std::vector<double> coefficients;  // one per design column
};

struct LogModel {
  double a = 0.0;  // intercept
  double b = 0.0;  // slope on ln(x)

  double predict(double x) const;
};

struct PolynomialModel {
  int degree = 1;
  LinearModel linear;  // coefficients on x, x^2, ..., x^degree

  double predict(double x) const;
};

struct MetricReport {
  std::optional<double> r2;  // empty when y_true is constant
  double mse = 0.0;
  double rmse = 0.0;
  double mae = 0.0;
  double medae = 0.0;
  std::vector<double> residuals;  // y_true - y_pred
};

// Least squares with an implicit intercept, solved by column-pivoted QR.
// Throws RankDeficient when the augmented design is not full column rank.
LinearModel fit_ols(const DesignMatrix& x, std::span<const double> y);

// Minimizes sum w_i * r_i^2. All weights must be positive.
LinearModel fit_wls(const DesignMatrix& x, std::span<const double> y,
                    std::span<const double> weights);

// Columns [x, x^2, ..., x^degree].
DesignMatrix expand_polynomial(std::span<const double> x, int degree);

PolynomialModel fit_polynomial(std::span<const double> x,
                               std::span<const double> y, int degree);

// OLS on (ln x, y). Every x must be positive.
LogModel fit_log(std::span<const double> x, std::span<const double> y);

std::vector<double> predict_linear(const LinearModel& model,
                                   const DesignMatrix& x);
double predict_linear(const LinearModel& model, std::span<const double> row);

MetricReport compute_metrics(std::span<const double> y_true,
                             std::span<const double> y_pred);

// Median of a non-empty list (mean of the middle pair for even sizes).
double median(std::span<const double> values);

}  // namespace memopace

#endif  // MEMOPACE_LINMOD_H_
