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

#include "json_codec.h"

#include <string>

#include "memopace/error.h"
#include "memopace/model_io.h"

namespace memopace::json_codec {

json optional_number(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

json parse(std::string_view text, ErrorCode code, std::string_view what) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::exception& e) {
    throw Error(code, std::string(what) + ": " + e.what());
  }
}

json encode(const LinearModel& model) {
  return {{"intercept", model.intercept},
          {"coefficients", model.coefficients}};
}

json encode(const HyperbolaCurve& curve) {
  return {{"a", curve.a}, {"b", curve.b}, {"cap", curve.cap}};
}

json encode(const DecisionTree& tree) {
  json nodes = json::array();
  for (const auto& n : tree.nodes()) {
    nodes.push_back({n.feature, n.threshold, n.left, n.right, n.value,
                     n.samples});
  }
  return {{"n_features", tree.n_features()},
          {"max_depth", tree.max_depth()},
          {"min_samples_leaf", tree.min_samples_leaf()},
          {"nodes", std::move(nodes)}};
}

json encode(const Forest& forest) {
  json trees = json::array();
  for (const auto& t : forest.trees()) trees.push_back(encode(t));
  const auto& o = forest.options();
  return {{"n_estimators", o.n_estimators},
          {"seed", o.seed},
          {"max_depth", o.max_depth},
          {"min_samples_leaf", o.min_samples_leaf},
          {"bootstrap", o.bootstrap},
          {"trees", std::move(trees)}};
}

json encode(const BoostedEnsemble& boost) {
  json stages = json::array();
  for (const auto& t : boost.stages()) stages.push_back(encode(t));
  const auto& o = boost.options();
  return {{"base_prediction", boost.base_prediction()},
          {"learning_rate", o.learning_rate},
          {"max_rounds", o.max_rounds},
          {"patience", o.patience},
          {"max_depth", o.max_depth},
          {"min_samples_leaf", o.min_samples_leaf},
          {"best_round", boost.best_round()},
          {"validation_trace", boost.validation_trace()},
          {"stages", std::move(stages)}};
}

json encode(const MetricReport& report, bool with_residuals) {
  json j = {{"r2", optional_number(report.r2)},
            {"mse", report.mse},
            {"rmse", report.rmse},
            {"mae", report.mae},
            {"medae", report.medae}};
  if (with_residuals) j["residuals"] = report.residuals;
  return j;
}

json encode(const ComparisonTable& table) {
  json rows = json::array();
  for (const auto& r : table.rows) {
    json row = encode(r.report);
    row["model"] = r.model;
    row["nonlinear"] = r.nonlinear;
    rows.push_back(std::move(row));
  }
  return {{"rows", std::move(rows)},
          {"best",
           {{"mse", table.best_mse},
            {"mae", table.best_mae},
            {"medae", table.best_medae},
            {"rmse", table.best_rmse}}}};
}

json encode(const CvSweepRow& row) {
  return {{"k", row.k},
          {"r2", optional_number(row.r2)},
          {"mse", row.mse},
          {"rmse", row.rmse},
          {"mae", row.mae},
          {"medae", row.medae}};
}

json encode(const HyperbolaFit& fit) {
  json j = encode(fit.curve);
  j["loss"] = std::string(to_string(fit.loss));
  j["objective"] = fit.objective;
  j["start_objective"] = fit.start_objective;
  j["iterations"] = fit.iterations;
  j["converged"] = fit.converged;
  return j;
}

LinearModel decode_linear(const json& j) {
  LinearModel m;
  m.intercept = j.at("intercept").get<double>();
  m.coefficients = j.at("coefficients").get<std::vector<double>>();
  return m;
}

HyperbolaCurve decode_curve(const json& j) {
  HyperbolaCurve c;
  c.a = j.at("a").get<double>();
  c.b = j.at("b").get<double>();
  c.cap = j.value("cap", static_cast<double>(kMaxQuantity));
  return c;
}

DecisionTree decode_tree(const json& j) {
  std::vector<DecisionTree::Node> nodes;
  for (const auto& n : j.at("nodes")) {
    DecisionTree::Node node;
    node.feature = n.at(0).get<int>();
    node.threshold = n.at(1).get<double>();
    node.left = n.at(2).get<int>();
    node.right = n.at(3).get<int>();
    node.value = n.at(4).get<double>();
    node.samples = n.at(5).get<std::size_t>();
    nodes.push_back(node);
  }
  const auto count = static_cast<int>(nodes.size());
  for (const auto& node : nodes) {
    if (node.feature >= 0 &&
        (node.left <= 0 || node.left >= count || node.right <= 0 ||
         node.right >= count)) {
      throw Error(ErrorCode::kBadArgument, "tree node child out of range");
    }
  }
  return DecisionTree(std::move(nodes), j.at("n_features").get<std::size_t>(),
                      j.at("max_depth").get<int>(),
                      j.at("min_samples_leaf").get<int>());
}

Forest decode_forest(const json& j) {
  ForestOptions o;
  o.n_estimators = j.at("n_estimators").get<int>();
  o.seed = j.at("seed").get<std::uint64_t>();
  o.max_depth = j.at("max_depth").get<int>();
  o.min_samples_leaf = j.at("min_samples_leaf").get<int>();
  o.bootstrap = j.at("bootstrap").get<bool>();
  std::vector<DecisionTree> trees;
  for (const auto& t : j.at("trees")) trees.push_back(decode_tree(t));
  return Forest(std::move(trees), o);
}

BoostedEnsemble decode_boost(const json& j) {
  BoostOptions o;
  o.learning_rate = j.at("learning_rate").get<double>();
  o.max_rounds = j.at("max_rounds").get<int>();
  o.patience = j.at("patience").get<int>();
  o.max_depth = j.at("max_depth").get<int>();
  o.min_samples_leaf = j.at("min_samples_leaf").get<int>();
  std::vector<DecisionTree> stages;
  for (const auto& t : j.at("stages")) stages.push_back(decode_tree(t));
  return BoostedEnsemble(j.at("base_prediction").get<double>(),
                         std::move(stages), o, j.at("best_round").get<int>(),
                         j.at("validation_trace").get<std::vector<double>>());
}

}  // namespace memopace::json_codec

namespace memopace {

using json_codec::json;

std::string plane_to_json(const LinearModel& plane) {
  json j = json_codec::encode(plane);
  j["kind"] = "plane";
  return j.dump(2) + "\n";
}

LinearModel plane_from_json(std::string_view text) {
  const auto j = json_codec::parse(text, ErrorCode::kBadArgument,
                                   "plane parameter file");
  try {
    if (j.value("kind", std::string("plane")) != "plane") {
      throw Error(ErrorCode::kBadArgument, "parameter file is not a plane");
    }
    auto model = json_codec::decode_linear(j);
    if (model.coefficients.size() != 2) {
      throw Error(ErrorCode::kWidthMismatch,
                  "plane needs exactly 2 coefficients (score, correct)");
    }
    return model;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kBadArgument,
                std::string("plane parameter file: ") + e.what());
  }
}

std::string curve_to_json(const CurveDocument& doc) {
  json j = json_codec::encode(doc.curve);
  j["kind"] = "hyperbola";
  j["loss"] = std::string(to_string(doc.loss));
  j["athlete"] = doc.athlete;
  return j.dump(2) + "\n";
}

CurveDocument curve_from_json(std::string_view text) {
  const auto j =
      json_codec::parse(text, ErrorCode::kBadArgument, "curve file");
  try {
    if (j.value("kind", std::string("hyperbola")) != "hyperbola") {
      throw Error(ErrorCode::kBadArgument, "curve file is not a hyperbola");
    }
    CurveDocument doc;
    doc.curve = json_codec::decode_curve(j);
    doc.loss = parse_loss(j.value("loss", std::string("medae")));
    doc.athlete = j.value("athlete", std::string());
    return doc;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kBadArgument,
                std::string("curve file: ") + e.what());
  }
}

}  // namespace memopace
