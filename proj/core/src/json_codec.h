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

#ifndef MEMOPACE_SRC_JSON_CODEC_H_
#define MEMOPACE_SRC_JSON_CODEC_H_

// nlohmann/json conversions shared by the pipelines exporter and the
// service store. Internal: not installed.

#include <string_view>

#include "json.hpp"
#include "memopace/curvefit.h"
#include "memopace/eval.h"
#include "memopace/linmod.h"
#include "memopace/trees.h"

namespace memopace::json_codec {

using nlohmann::json;

json encode(const LinearModel& model);
json encode(const HyperbolaCurve& curve);
json encode(const DecisionTree& tree);
json encode(const Forest& forest);
json encode(const BoostedEnsemble& boost);
json encode(const MetricReport& report, bool with_residuals = false);
json encode(const ComparisonTable& table);
json encode(const CvSweepRow& row);
json encode(const HyperbolaFit& fit);

LinearModel decode_linear(const json& j);
HyperbolaCurve decode_curve(const json& j);
DecisionTree decode_tree(const json& j);
Forest decode_forest(const json& j);
BoostedEnsemble decode_boost(const json& j);

json optional_number(const std::optional<double>& v);

// Parses `text`, mapping syntax and schema errors to Error(code).
json parse(std::string_view text, ErrorCode code, std::string_view what);

}  // namespace memopace::json_codec

#endif  // MEMOPACE_SRC_JSON_CODEC_H_
