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

#ifndef MEMOPACE_CURVEFIT_H_
#define MEMOPACE_CURVEFIT_H_

#include <span>
#include <string_view>
#include <vector>

#include "memopace/dataset.h"

namespace memopace {

// quantity = a / (time + b), capped at prediction time only.
struct HyperbolaCurve {
  double a = 0.0;
  double b = 0.0;
  double cap = kMaxQuantity;

  // Uncapped model value. Throws SingularPoint within 1e-9 of t = -b.
  double raw(double t) const;

  friend bool operator==(const HyperbolaCurve&,
                         const HyperbolaCurve&) = default;
};

struct FitOptions {
  int max_iterations = 200;
  double tolerance = 1e-10;  // on the relative parameter step
  double initial_damping = 1e-3;
};

enum class LossKind { kSquared, kMedianAbsolute };

// "mse" / "medae" (also accepts "mean" / "median").
LossKind parse_loss(std::string_view name);
std::string_view to_string(LossKind loss);

struct HyperbolaStart {
  double a = 0.0;
  double b = 0.0;
  bool used_grid = false;
};

struct HyperbolaFit {
  HyperbolaCurve curve;
  LossKind loss = LossKind::kSquared;
  double objective = 0.0;        // value of the loss at `curve`
  double start_objective = 0.0;  // value at the starting point
  int iterations = 0;
  // False when the iteration budget ran out; `curve` is then the best
  // point found.
  bool converged = false;
};

struct CurvePoint {
  double t = 0.0;
  double value = 0.0;

  friend bool operator==(const CurvePoint&, const CurvePoint&) = default;
};

// Anchored two-point solve through the fastest and slowest samples, with a
// grid search over b when that is degenerate.
HyperbolaStart init_hyperbola(std::span<const double> time,
                              std::span<const double> quantity);

// Damped Gauss-Newton (Levenberg-Marquardt) on the squared residuals.
HyperbolaFit fit_hyperbola_ls(std::span<const double> time,
                              std::span<const double> quantity,
                              const FitOptions& opts = {});

// Nelder-Mead on the median absolute residual, started from the
// least-squares solution.
HyperbolaFit fit_hyperbola_median(std::span<const double> time,
                                  std::span<const double> quantity,
                                  const FitOptions& opts = {});

HyperbolaFit fit_hyperbola(std::span<const double> time,
                           std::span<const double> quantity, LossKind loss,
                           const FitOptions& opts = {});

// Sum of squared residuals; +inf if any sample sits on the singularity.
double squared_loss(const HyperbolaCurve& curve, std::span<const double> time,
                    std::span<const double> quantity);
// Median absolute residual; +inf if any sample sits on the singularity.
double median_abs_loss(const HyperbolaCurve& curve,
                       std::span<const double> time,
                       std::span<const double> quantity);

// min(cap, a / (t + b)).
double predict_capped(const HyperbolaCurve& curve, double t);

// Round-half-up of predict_capped, clamped to [0, cap].
int predict_quantity(const HyperbolaCurve& curve, double t);

// Inclusive grid t_min, t_min + step, ... <= t_max with capped values.
std::vector<CurvePoint> evaluate_grid(const HyperbolaCurve& curve,
                                      double t_min, double t_max,
                                      double step);

// Grid coordinates shared by curve evaluation and athlete comparison.
std::vector<double> grid_points(double t_min, double t_max, double step);

}  // namespace memopace

#endif  // MEMOPACE_CURVEFIT_H_
