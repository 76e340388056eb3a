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

#ifndef MEMOPACE_MODEL_IO_H_
#define MEMOPACE_MODEL_IO_H_

#include <string>
#include <string_view>

#include "memopace/curvefit.h"
#include "memopace/linmod.h"

namespace memopace {

// Plane parameter document:
//   {"kind": "plane", "intercept": ..., "coefficients": [c_score, c_correct]}
std::string plane_to_json(const LinearModel& plane);
LinearModel plane_from_json(std::string_view text);

// Curve document:
//   {"kind": "hyperbola", "a": ..., "b": ..., "cap": 80, "loss": "medae",
//    "athlete": "..."}
struct CurveDocument {
  HyperbolaCurve curve;
  LossKind loss = LossKind::kMedianAbsolute;
  std::string athlete;
};

std::string curve_to_json(const CurveDocument& doc);
CurveDocument curve_from_json(std::string_view text);

}  // namespace memopace

#endif  // MEMOPACE_MODEL_IO_H_
