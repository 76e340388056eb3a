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

#include "memopace/curvefit.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "memopace/error.h"
#include "memopace/linmod.h"

namespace memopace {
namespace {

constexpr double kSingularGap = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMaxDamping = 1e16;

using Params = std::array<double, 2>;

bool touches_singularity(double b, std::span<const double> time) {
  for (double t : time) {
    if (std::abs(t + b) < kSingularGap) return true;
  }
  return false;
}

void check_inputs(std::span<const double> time,
                  std::span<const double> quantity, std::size_t min_points) {
  if (time.size() != quantity.size()) {
    throw Error(ErrorCode::kLengthMismatch, "time and quantity lengths differ");
  }
  if (time.size() < min_points) {
    throw Error(ErrorCode::kDegenerateData,
                "need at least " + std::to_string(min_points) + " samples");
  }
  for (std::size_t i = 0; i < time.size(); ++i) {
    if (!std::isfinite(time[i]) || !std::isfinite(quantity[i])) {
      throw Error(ErrorCode::kBadArgument, "non-finite sample");
    }
  }
  const auto [lo, hi] = std::minmax_element(time.begin(), time.end());
  if (!(*hi > *lo)) {
    throw Error(ErrorCode::kDegenerateData,
                "need at least 2 distinct times");
  }
}

double sse_at(const Params& p, std::span<const double> time,
              std::span<const double> quantity) {
  double sse = 0.0;
  for (std::size_t i = 0; i < time.size(); ++i) {
    const double r = quantity[i] - p[0] / (time[i] + p[1]);
    sse += r * r;
  }
  return sse;
}

double median_abs_at(const Params& p, std::span<const double> time,
                     std::span<const double> quantity) {
  if (touches_singularity(p[1], time)) return kInf;
  std::vector<double> abs_res(time.size());
  for (std::size_t i = 0; i < time.size(); ++i) {
    abs_res[i] = std::abs(quantity[i] - p[0] / (time[i] + p[1]));
  }
  const double m = median(abs_res);
  return std::isfinite(m) ? m : kInf;
}

// For fixed b the model is linear in a, so the best a is closed form.
Params best_a_for(double b, std::span<const double> time,
                  std::span<const double> quantity) {
  double gy = 0.0;
  double gg = 0.0;
  for (std::size_t i = 0; i < time.size(); ++i) {
    const double g = 1.0 / (time[i] + b);
    gy += g * quantity[i];
    gg += g * g;
  }
  return {gy / gg, b};
}

Params grid_start(std::span<const double> time,
                  std::span<const double> quantity) {
  const auto [lo, hi] = std::minmax_element(time.begin(), time.end());
  const double span = *hi - *lo;
  Params best{0.0, 0.0};
  double best_sse = kInf;
  // Offsets from 1e-2 to 1e5 data spans, on both branches of the hyperbola.
  for (int k = -16; k <= 40; ++k) {
    const double d = span * std::pow(10.0, k / 8.0);
    for (const double b : {-*lo + d, -*hi - d}) {
      const Params p = best_a_for(b, time, quantity);
      const double sse = sse_at(p, time, quantity);
      if (std::isfinite(sse) && sse < best_sse) {
        best_sse = sse;
        best = p;
      }
    }
  }
  return best;
}

double mean_quantity_at(double t, std::span<const double> time,
                        std::span<const double> quantity) {
  double sum = 0.0;
  int count = 0;
  for (std::size_t i = 0; i < time.size(); ++i) {
    if (time[i] == t) {
      sum += quantity[i];
      ++count;
    }
  }
  return sum / count;
}

HyperbolaFit make_fit(const Params& p, LossKind loss, double objective,
                      double start_objective, int iterations,
                      bool converged) {
  HyperbolaFit fit;
  fit.curve = {p[0], p[1], kMaxQuantity};
  fit.loss = loss;
  fit.objective = objective;
  fit.start_objective = start_objective;
  fit.iterations = iterations;
  fit.converged = converged;
  return fit;
}

void check_options(const FitOptions& opts) {
  if (opts.max_iterations <= 0 || !(opts.tolerance > 0.0) ||
      !(opts.initial_damping > 0.0)) {
    throw Error(ErrorCode::kBadArgument, "fit options must be positive");
  }
}

}  // namespace

double HyperbolaCurve::raw(double t) const {
  if (std::abs(t + b) < kSingularGap) {
    throw Error(ErrorCode::kSingularPoint,
                "t = " + std::to_string(t) +
                    " is at the curve singularity t = -b");
  }
  return a / (t + b);
}

LossKind parse_loss(std::string_view name) {
  if (name == "mse" || name == "mean" || name == "squared") {
    return LossKind::kSquared;
  }
  if (name == "medae" || name == "median" || name == "median_absolute") {
    return LossKind::kMedianAbsolute;
  }
  throw Error(ErrorCode::kBadArgument,
              "unknown loss '" + std::string(name) + "' (mse|medae)");
}

std::string_view to_string(LossKind loss) {
  return loss == LossKind::kSquared ? "mse" : "medae";
}

HyperbolaStart init_hyperbola(std::span<const double> time,
                              std::span<const double> quantity) {
  check_inputs(time, quantity, 2);
  const auto [lo, hi] = std::minmax_element(time.begin(), time.end());
  const double x1 = *lo;
  const double x2 = *hi;
  const double y1 = mean_quantity_at(x1, time, quantity);
  const double y2 = mean_quantity_at(x2, time, quantity);

  if (y1 != y2) {
    const double b0 = (y2 * x2 - y1 * x1) / (y1 - y2);
    const bool pole_inside = -b0 >= x1 - kSingularGap && -b0 <= x2 + kSingularGap;
    if (std::isfinite(b0) && !pole_inside) {
      return {y1 * (x1 + b0), b0, false};
    }
  }
  const auto p = grid_start(time, quantity);
  return {p[0], p[1], true};
}

HyperbolaFit fit_hyperbola_ls(std::span<const double> time,
                              std::span<const double> quantity,
                              const FitOptions& opts) {
  check_options(opts);
  check_inputs(time, quantity, 3);
  const auto start = init_hyperbola(time, quantity);
  Params p{start.a, start.b};
  if (touches_singularity(p[1], time)) {
    throw Error(ErrorCode::kSingularJacobian,
                "starting point places a sample on the singularity");
  }

  const std::size_t m = time.size();
  double sse = sse_at(p, time, quantity);
  const double start_sse = sse;
  double damping = opts.initial_damping;
  bool converged = sse == 0.0;
  int iter = 0;

  while (!converged && iter < opts.max_iterations) {
    ++iter;
    // Normal equations of the linearized problem; J is the model Jacobian.
    double jaa = 0.0, jab = 0.0, jbb = 0.0, ga = 0.0, gb = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double inv = 1.0 / (time[i] + p[1]);
      const double da = inv;
      const double db = -p[0] * inv * inv;
      const double r = quantity[i] - p[0] * inv;
      jaa += da * da;
      jab += da * db;
      jbb += db * db;
      ga += da * r;
      gb += db * r;
    }
    const double diag_floor = 1e-12 * (jaa + jbb) + 1e-300;
    const double daa = std::max(jaa, diag_floor);
    const double dbb = std::max(jbb, diag_floor);

    bool accepted = false;
    Params step{0.0, 0.0};
    while (damping <= kMaxDamping) {
      const double a11 = jaa + damping * daa;
      const double a22 = jbb + damping * dbb;
      const double det = a11 * a22 - jab * jab;
      if (!(det > 0.0) || !std::isfinite(det)) {
        damping *= 10.0;
        continue;
      }
      step = {(a22 * ga - jab * gb) / det, (a11 * gb - jab * ga) / det};
      const Params trial{p[0] + step[0], p[1] + step[1]};
      if (touches_singularity(trial[1], time)) {
        damping *= 10.0;
        continue;
      }
      const double trial_sse = sse_at(trial, time, quantity);
      if (std::isfinite(trial_sse) && trial_sse <= sse) {
        p = trial;
        sse = trial_sse;
        damping = std::max(damping / 10.0, 1e-15);
        accepted = true;
        break;
      }
      damping *= 10.0;
    }
    if (!accepted) {
      // No damped step lowers the loss: p is stationary to working
      // precision.
      converged = true;
      break;
    }
    const bool small_step =
        std::abs(step[0]) <= opts.tolerance * (std::abs(p[0]) + opts.tolerance) &&
        std::abs(step[1]) <= opts.tolerance * (std::abs(p[1]) + opts.tolerance);
    if (small_step || sse == 0.0) converged = true;
  }
  return make_fit(p, LossKind::kSquared, sse, start_sse, iter, converged);
}

HyperbolaFit fit_hyperbola_median(std::span<const double> time,
                                  std::span<const double> quantity,
                                  const FitOptions& opts) {
  const auto ls = fit_hyperbola_ls(time, quantity, opts);
  const Params start{ls.curve.a, ls.curve.b};
  const double start_loss = median_abs_at(start, time, quantity);

  auto objective = [&](const Params& p) {
    return median_abs_at(p, time, quantity);
  };

  Params best = start;
  double best_loss = start_loss;
  const int budget = 20 * opts.max_iterations;
  int total_iter = 0;
  bool converged = false;

  // Restart from the incumbent with a fresh simplex until a restart fails
  // to improve it; the median objective is flat in places and a single
  // simplex collapses early.
  double scale = 0.05;
  for (int restart = 0; restart < 12 && total_iter < budget; ++restart) {
    std::array<Params, 3> simplex{best, best, best};
    for (int k = 0; k < 2; ++k) {
      const double h = best[k] != 0.0 ? scale * std::abs(best[k]) : 0.00025;
      simplex[k + 1][k] += h;
    }
    std::array<double, 3> f{};
    for (int v = 0; v < 3; ++v) f[v] = objective(simplex[v]);

    int iter = 0;
    for (; iter < budget - total_iter; ++iter) {
      std::array<int, 3> order{0, 1, 2};
      std::stable_sort(order.begin(), order.end(),
                       [&](int l, int r) { return f[l] < f[r]; });
      const int ib = order[0], im = order[1], iw = order[2];

      const double size = std::max(
          {std::abs(simplex[im][0] - simplex[ib][0]) /
               (std::abs(simplex[ib][0]) + 1e-300),
           std::abs(simplex[iw][0] - simplex[ib][0]) /
               (std::abs(simplex[ib][0]) + 1e-300),
           std::abs(simplex[im][1] - simplex[ib][1]) /
               (std::abs(simplex[ib][1]) + 1e-300),
           std::abs(simplex[iw][1] - simplex[ib][1]) /
               (std::abs(simplex[ib][1]) + 1e-300)});
      if (size < opts.tolerance) break;

      const Params centroid{0.5 * (simplex[ib][0] + simplex[im][0]),
                            0.5 * (simplex[ib][1] + simplex[im][1])};
      auto along = [&](double coef) {
        return Params{centroid[0] + coef * (simplex[iw][0] - centroid[0]),
                      centroid[1] + coef * (simplex[iw][1] - centroid[1])};
      };
      const Params reflected = along(-1.0);
      const double fr = objective(reflected);
      if (fr < f[ib]) {
        const Params expanded = along(-2.0);
        const double fe = objective(expanded);
        if (fe < fr) {
          simplex[iw] = expanded;
          f[iw] = fe;
        } else {
          simplex[iw] = reflected;
          f[iw] = fr;
        }
        continue;
      }
      if (fr < f[im]) {
        simplex[iw] = reflected;
        f[iw] = fr;
        continue;
      }
      const bool outside = fr < f[iw];
      const Params contracted = along(outside ? -0.5 : 0.5);
      const double fc = objective(contracted);
      if (fc < (outside ? fr : f[iw])) {
        simplex[iw] = contracted;
        f[iw] = fc;
        continue;
      }
      for (int v : {im, iw}) {
        simplex[v] = {0.5 * (simplex[v][0] + simplex[ib][0]),
                      0.5 * (simplex[v][1] + simplex[ib][1])};
        f[v] = objective(simplex[v]);
      }
    }
    total_iter += iter;

    const auto it = std::min_element(f.begin(), f.end());
    const auto idx = static_cast<std::size_t>(it - f.begin());
    if (*it < best_loss) {
      best = simplex[idx];
      best_loss = *it;
      scale = 0.05;
    } else {
      converged = true;
      if (scale < 1e-4) break;
      scale *= 0.1;
    }
  }
  return make_fit(best, LossKind::kMedianAbsolute, best_loss, start_loss,
                  total_iter, converged);
}

HyperbolaFit fit_hyperbola(std::span<const double> time,
                           std::span<const double> quantity, LossKind loss,
                           const FitOptions& opts) {
  return loss == LossKind::kSquared ? fit_hyperbola_ls(time, quantity, opts)
                                    : fit_hyperbola_median(time, quantity, opts);
}

double squared_loss(const HyperbolaCurve& curve, std::span<const double> time,
                    std::span<const double> quantity) {
  if (touches_singularity(curve.b, time)) return kInf;
  return sse_at({curve.a, curve.b}, time, quantity);
}

double median_abs_loss(const HyperbolaCurve& curve,
                       std::span<const double> time,
                       std::span<const double> quantity) {
  return median_abs_at({curve.a, curve.b}, time, quantity);
}

double predict_capped(const HyperbolaCurve& curve, double t) {
  return std::min(curve.cap, curve.raw(t));
}

int predict_quantity(const HyperbolaCurve& curve, double t) {
  const double rounded = std::floor(predict_capped(curve, t) + 0.5);
  return static_cast<int>(std::clamp(rounded, 0.0, curve.cap));
}

std::vector<double> grid_points(double t_min, double t_max, double step) {
  if (!(t_min < t_max) || !(step > 0.0) || !std::isfinite(t_max)) {
    throw Error(ErrorCode::kBadArgument,
                "grid needs t_min < t_max and step > 0");
  }
  // Tolerance keeps t_max when (t_max - t_min) / step is an integer up to
  // rounding.
  const auto n = static_cast<std::size_t>(
      std::floor((t_max - t_min) / step + 1e-9));
  std::vector<double> ts(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    ts[i] = t_min + static_cast<double>(i) * step;
  }
  return ts;
}

std::vector<CurvePoint> evaluate_grid(const HyperbolaCurve& curve,
                                      double t_min, double t_max,
                                      double step) {
  std::vector<CurvePoint> out;
  for (double t : grid_points(t_min, t_max, step)) {
    out.push_back({t, predict_capped(curve, t)});
  }
  return out;
}

}  // namespace memopace
