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

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "memopace/error.h"

namespace memopace {
namespace {

// Relative pivot threshold below which a column counts as dependent.
constexpr double kRankThreshold = 1e-10;

void require_same_length(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw Error(ErrorCode::kLengthMismatch,
                std::string(what) + ": lengths " + std::to_string(a) +
                    " and " + std::to_string(b) + " differ");
  }
}

LinearModel solve_least_squares(const DesignMatrix& x,
                                std::span<const double> y,
                                std::span<const double> weights) {
  const auto m = x.rows();
  const auto n = x.cols();
  require_same_length(m, y.size(), "design rows vs targets");
  if (m <= n) {
    throw Error(ErrorCode::kRankDeficient,
                std::to_string(m) + " observations cannot determine " +
                    std::to_string(n + 1) + " parameters");
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!std::isfinite(x(i, j))) {
        throw Error(ErrorCode::kBadArgument, "non-finite design entry");
      }
    }
  }

  Eigen::MatrixXd a(m, n + 1);
  Eigen::VectorXd b(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double s = weights.empty() ? 1.0 : std::sqrt(weights[i]);
    a(i, 0) = s;
    for (std::size_t j = 0; j < n; ++j) a(i, j + 1) = s * x(i, j);
    b(i) = s * y[i];
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
  qr.setThreshold(kRankThreshold);
  if (qr.rank() < static_cast<Eigen::Index>(n + 1)) {
    throw Error(ErrorCode::kRankDeficient,
                "design matrix with intercept has rank " +
                    std::to_string(qr.rank()) + " < " +
                    std::to_string(n + 1));
  }
  const Eigen::VectorXd theta = qr.solve(b);

  LinearModel model;
  model.intercept = theta(0);
  model.coefficients.assign(theta.data() + 1, theta.data() + theta.size());
  return model;
}

}  // namespace

DesignMatrix::DesignMatrix(
    std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) {
      throw Error(ErrorCode::kWidthMismatch, "ragged design matrix rows");
    }
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

DesignMatrix DesignMatrix::from_column(std::span<const double> column) {
  DesignMatrix out(column.size(), 1);
  std::copy(column.begin(), column.end(), out.data_.begin());
  return out;
}

DesignMatrix DesignMatrix::from_columns(
    std::initializer_list<std::span<const double>> columns) {
  const std::size_t rows = columns.size() ? columns.begin()->size() : 0;
  DesignMatrix out(rows, columns.size());
  std::size_t c = 0;
  for (const auto& col : columns) {
    require_same_length(rows, col.size(), "design columns");
    for (std::size_t r = 0; r < rows; ++r) out(r, c) = col[r];
    ++c;
  }
  return out;
}

std::vector<double> DesignMatrix::column(std::size_t c) const {
  std::vector<double> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

DesignMatrix DesignMatrix::select_rows(
    std::span<const std::size_t> indices) const {
  DesignMatrix out(indices.size(), cols_);
  for (std::size_t i = 0; i < indices.size(); ++i) {
    const auto src = row(indices[i]);
    std::copy(src.begin(), src.end(), out.data_.begin() + i * cols_);
  }
  return out;
}

std::vector<double> gather(std::span<const double> values,
                           std::span<const std::size_t> indices) {
  std::vector<double> out;
  out.reserve(indices.size());
  for (auto i : indices) out.push_back(values[i]);
  return out;
}

double LogModel::predict(double x) const {
  if (!(x > 0.0)) {
    throw Error(ErrorCode::kNonPositiveInput, "log model needs x > 0");
  }
  return a + b * std::log(x);
}

double PolynomialModel::predict(double x) const {
  double value = linear.intercept;
  double power = 1.0;
  for (double c : linear.coefficients) {
    power *= x;
    value += c * power;
  }
  return value;
}

LinearModel fit_ols(const DesignMatrix& x, std::span<const double> y) {
  return solve_least_squares(x, y, {});
}

LinearModel fit_wls(const DesignMatrix& x, std::span<const double> y,
                    std::span<const double> weights) {
  require_same_length(x.rows(), weights.size(), "design rows vs weights");
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw Error(ErrorCode::kNonPositiveWeight, "weights must be positive");
    }
  }
  return solve_least_squares(x, y, weights);
}

DesignMatrix expand_polynomial(std::span<const double> x, int degree) {
  if (degree < 1) throw Error(ErrorCode::kBadDegree, "degree must be >= 1");
  DesignMatrix out(x.size(), static_cast<std::size_t>(degree));
  for (std::size_t i = 0; i < x.size(); ++i) {
    double power = 1.0;
    for (int d = 0; d < degree; ++d) {
      power *= x[i];
      out(i, static_cast<std::size_t>(d)) = power;
    }
  }
  return out;
}

PolynomialModel fit_polynomial(std::span<const double> x,
                               std::span<const double> y, int degree) {
  return {degree, fit_ols(expand_polynomial(x, degree), y)};
}

LogModel fit_log(std::span<const double> x, std::span<const double> y) {
  std::vector<double> logs;
  logs.reserve(x.size());
  for (double v : x) {
    if (!(v > 0.0)) {
      throw Error(ErrorCode::kNonPositiveInput,
                  "logarithmic fit needs every x > 0");
    }
    logs.push_back(std::log(v));
  }
  const auto model = fit_ols(DesignMatrix::from_column(logs), y);
  return {model.intercept, model.coefficients.front()};
}

double predict_linear(const LinearModel& model, std::span<const double> row) {
  if (row.size() != model.coefficients.size()) {
    throw Error(ErrorCode::kWidthMismatch,
                "model expects " + std::to_string(model.coefficients.size()) +
                    " features, got " + std::to_string(row.size()));
  }
  double value = model.intercept;
  for (std::size_t j = 0; j < row.size(); ++j) {
    value += model.coefficients[j] * row[j];
  }
  return value;
}

std::vector<double> predict_linear(const LinearModel& model,
                                   const DesignMatrix& x) {
  if (x.cols() != model.coefficients.size()) {
    throw Error(ErrorCode::kWidthMismatch,
                "model expects " + std::to_string(model.coefficients.size()) +
                    " features, got " + std::to_string(x.cols()));
  }
  std::vector<double> out(x.rows());
  for (std::size_t i = 0; i < x.rows(); ++i) {
    out[i] = predict_linear(model, x.row(i));
  }
  return out;
}

double median(std::span<const double> values) {
  if (values.empty()) throw Error(ErrorCode::kEmptyInput, "empty input");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  return n % 2 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
}

MetricReport compute_metrics(std::span<const double> y_true,
                             std::span<const double> y_pred) {
  require_same_length(y_true.size(), y_pred.size(), "y_true vs y_pred");
  if (y_true.empty()) throw Error(ErrorCode::kEmptyInput, "no observations");
  const double n = static_cast<double>(y_true.size());

  MetricReport report;
  report.residuals.resize(y_true.size());
  std::vector<double> abs_residuals(y_true.size());
  double rss = 0.0;
  double abs_sum = 0.0;
  double mean_true = 0.0;
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    const double r = y_true[i] - y_pred[i];
    report.residuals[i] = r;
    abs_residuals[i] = std::abs(r);
    rss += r * r;
    abs_sum += std::abs(r);
    mean_true += y_true[i];
  }
  mean_true /= n;
  double tss = 0.0;
  for (double v : y_true) tss += (v - mean_true) * (v - mean_true);

  report.mse = rss / n;
  report.rmse = std::sqrt(report.mse);
  report.mae = abs_sum / n;
  report.medae = median(abs_residuals);
  if (tss > 0.0) report.r2 = 1.0 - rss / tss;
  return report;
}

}  // namespace memopace
