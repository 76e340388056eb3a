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

#include "memopace/service.h"

#include <gtest/gtest.h>

#include <filesystem>
#include <set>
#include <string>
#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "memopace/dataset.h"
#include "memopace/pipelines.h"
#include "test_support.h"

namespace memopace {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using testing::TempDir;

std::string fixed_clock() { return "2026-01-01T00:00:00Z"; }

ServiceOptions quick() {
  ServiceOptions o;
  o.forest_trees = 20;
  return o;
}

HttpResponse get(Service& s, const std::string& path,
                 std::map<std::string, std::string> query = {}) {
  return s.handle({"GET", path, std::move(query), ""});
}

HttpResponse post(Service& s, const std::string& path, const json& body) {
  return s.handle({"POST", path, {}, body.dump()});
}

std::string matchlog_text(std::uint64_t seed, double a = -900, double b = -50) {
  return format_matchlog(testing::saturating_athlete(seed, 120, a, b));
}

std::string task1_text() {
  Rng rng(8);
  std::vector<AttemptRecord> rows;
  for (int i = 0; i < 40; ++i) {
    const auto s = static_cast<std::int64_t>(60 + rng.uniform_index(300));
    const auto m = static_cast<std::int64_t>(1 + rng.uniform_index(50));
    const auto jitter = static_cast<std::int64_t>(rng.uniform_index(3));
    rows.push_back({s, s + 2 * m + jitter, s + m});
  }
  return format_task1_csv(rows);
}

std::string upload(Service& s, const std::string& kind, const std::string& text,
                   const std::string& name = "") {
  const auto r = post(s, "/datasets", {{"kind", kind}, {"name", name}, {"body", text}});
  EXPECT_EQ(r.status, 201) << r.body;
  return json::parse(r.body).value("id", "");
}

TEST(Sha256, KnownDigest) {
  EXPECT_EQ(sha256_hex("abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Service, Health) {
  TempDir dir;
  Service s(dir.path(), quick(), fixed_clock);
  const auto r = get(s, "/health");
  EXPECT_EQ(r.status, 200);
  EXPECT_EQ(json::parse(r.body)["status"], "ok");
  EXPECT_EQ(get(s, "/nowhere").status, 404);
}

TEST(Service, UploadDuplicateAndList) {
  TempDir dir;
  Service s(dir.path(), quick(), fixed_clock);
  const auto id = upload(s, "matchlog", matchlog_text(1), "alice");
  EXPECT_EQ(id.rfind("ds-", 0), 0u);
  const auto dup = post(s, "/datasets",
                        {{"kind", "matchlog"}, {"name", "x"}, {"body", matchlog_text(1)}});
  EXPECT_EQ(dup.status, 409);
  const auto dj = json::parse(dup.body);
  EXPECT_EQ(dj["code"], "Duplicate");
  EXPECT_EQ(dj["detail"]["id"], id);

  const auto list = json::parse(get(s, "/datasets").body)["datasets"];
  ASSERT_EQ(list.size(), 1u);
  EXPECT_EQ(list[0]["id"], id);
  EXPECT_EQ(list[0]["rows"], 120);
  EXPECT_EQ(list[0]["name"], "alice");
  EXPECT_EQ(list[0]["created"], fixed_clock());
  EXPECT_EQ(list[0]["sha256"], sha256_hex(matchlog_text(1)));
}

TEST(Service, UploadReportsBadRowLine) {
  TempDir dir;
  Service s(dir.path(), quick(), fixed_clock);
  const auto r = post(s, "/datasets",
                      {{"kind", "matchlog"}, {"body", "30,20.5\n90,20\nx,1\n"}});
  EXPECT_EQ(r.status, 422);
  const auto j = json::parse(r.body);
  EXPECT_EQ(j["detail"]["line"], 2);
  EXPECT_EQ(j["detail"]["errors"].size(), 2u);
  EXPECT_EQ(j["code"], "QuantityOutOfRange");
  EXPECT_EQ(post(s, "/datasets", {{"kind", "bogus"}, {"body", ""}}).status, 400);
  EXPECT_EQ(s.handle({"POST", "/datasets", {}, "{broken"}).status, 400);
}

TEST(Service, Task1FitAndAim) {
  TempDir dir;
  Service s(dir.path(), quick(), fixed_clock);
  const auto published =
      get(s, "/task1/aim", {{"score", "120"}, {"correct", "196"}});
  ASSERT_EQ(published.status, 200) << published.body;
  const auto pj = json::parse(published.body);
  EXPECT_EQ(pj["aim"], 176);
  EXPECT_EQ(pj["model_id"], kPublishedModelId);
  EXPECT_EQ(pj["rounding"], "floor");
  EXPECT_EQ(json::parse(get(s, "/task1/aim", {{"score", "360"},
                                              {"correct", "431"},
                                              {"rounding", "nearest"}})
                            .body)["aim"],
            393);

  const auto id = upload(s, "task1", task1_text());
  const auto fit = post(s, "/task1/fit", {{"dataset_id", id}, {"seed", 3}});
  ASSERT_EQ(fit.status, 200) << fit.body;
  const auto fj = json::parse(fit.body);
  EXPECT_EQ(fj["cv_table"].size(), 8u);
  EXPECT_EQ(fj["seed"], 3);
  const std::string model_id = fj["model_id"];
  const auto aimed = get(
      s, "/task1/aim", {{"model_id", model_id}, {"score", "100"}, {"correct", "140"}});
  ASSERT_EQ(aimed.status, 200);
  const LinearModel plane{fj["intercept"].get<double>(),
                          fj["coefficients"].get<std::vector<double>>()};
  EXPECT_EQ(json::parse(aimed.body)["aim"], aim(plane, 100, 140).aim);

  const auto missing = get(s, "/task1/aim",
                           {{"model_id", "m-nope"}, {"score", "1"}, {"correct", "1"}});
  EXPECT_EQ(missing.status, 404);
  EXPECT_EQ(json::parse(missing.body)["code"], "NotFound");
  EXPECT_EQ(get(s, "/task1/aim", {{"score", "abc"}, {"correct", "1"}}).status, 400);
  EXPECT_EQ(get(s, "/task1/aim", {{"score", "1"}}).status, 400);
  const auto negative = get(s, "/task1/aim", {{"score", "-1"}, {"correct", "1"}});
  EXPECT_EQ(negative.status, 422);
  EXPECT_EQ(json::parse(negative.body)["code"], "NegativeInput");
}

TEST(Service, WrongDatasetKind) {
  TempDir dir;
  Service s(dir.path(), quick(), fixed_clock);
  const auto id = upload(s, "matchlog", matchlog_text(2));
  const auto r = post(s, "/task1/fit", {{"dataset_id", id}});
  EXPECT_EQ(r.status, 422);
  EXPECT_EQ(json::parse(r.body)["code"], "WrongKind");
  EXPECT_EQ(post(s, "/athletes/x/fit", {{"dataset_id", "ds-missing"}}).status, 404);
}

TEST(Service, AthleteFitPredictCurveCompare) {
  TempDir dir;
  Service s(dir.path(), quick(), fixed_clock);
  const auto a = upload(s, "matchlog", matchlog_text(3, -900, -60), "a");
  const auto b = upload(s, "matchlog", matchlog_text(4, -675, -50), "b");
  const auto fa = post(s, "/athletes/a/fit", {{"dataset_id", a}, {"seed", 1}});
  ASSERT_EQ(fa.status, 200) << fa.body;
  const auto faj = json::parse(fa.body);
  EXPECT_EQ(faj["model_ids"].size(), 5u);
  EXPECT_EQ(faj["loss"], "medae");
  EXPECT_EQ(faj["comparison_table"]["rows"].size(), 8u);
  ASSERT_EQ(post(s, "/athletes/b/fit", {{"dataset_id", b}}).status, 200);

  const auto far = get(s, "/athletes/a/predict", {{"time", "55"}});
  ASSERT_EQ(far.status, 200) << far.body;
  EXPECT_EQ(json::parse(far.body)["quantity_int"], 80);

  const auto curve = get(s, "/athletes/a/curve",
                         {{"t_min", "10"}, {"t_max", "20"}, {"step", "0.5"}});
  ASSERT_EQ(curve.status, 200) << curve.body;
  const auto cj = json::parse(curve.body);
  EXPECT_EQ(cj["t"].size(), 21u);
  EXPECT_EQ(cj["quantity_capped"].size(), 21u);
  for (const auto& v : cj["quantity_capped"]) EXPECT_LE(v.get<double>(), 80.0);
  EXPECT_EQ(get(s, "/athletes/a/curve").status, 200);

  const auto cmp = get(s, "/compare", {{"athlete_a", "a"},
                                       {"athlete_b", "b"},
                                       {"t_min", "10"},
                                       {"t_max", "40"},
                                       {"step", "0.1"}});
  ASSERT_EQ(cmp.status, 200) << cmp.body;
  const auto cmpj = json::parse(cmp.body);
  EXPECT_EQ(cmpj["grid"].size(), cmpj["a"].size());
  EXPECT_GE(cmpj["crossovers"].size(), 1u);

  EXPECT_EQ(get(s, "/athletes/nobody/predict", {{"time", "20"}}).status, 404);
  EXPECT_EQ(get(s, "/athletes/a/predict", {{"time", "x"}}).status, 400);
}

TEST(Service, RestartGivesByteIdenticalResponses) {
  TempDir dir;
  const std::map<std::string, std::string> q = {{"time", "25.5"}};
  std::string first_predict, first_curve, first_list;
  {
    Service s(dir.path(), quick(), fixed_clock);
    const auto id = upload(s, "matchlog", matchlog_text(5), "a");
    ASSERT_EQ(post(s, "/athletes/a/fit", {{"dataset_id", id}}).status, 200);
    first_predict = get(s, "/athletes/a/predict", q).body;
    first_curve = get(s, "/athletes/a/curve").body;
    first_list = get(s, "/datasets").body;
  }
  Service again(dir.path(), quick(), [] { return std::string("later"); });
  EXPECT_EQ(get(again, "/athletes/a/predict", q).body, first_predict);
  EXPECT_EQ(get(again, "/athletes/a/curve").body, first_curve);
  EXPECT_EQ(get(again, "/datasets").body, first_list);
}

TEST(Service, RefitIsDeterministic) {
  TempDir d1, d2;
  Service s1(d1.path(), quick(), fixed_clock);
  Service s2(d2.path(), quick(), fixed_clock);
  const auto text = matchlog_text(6);
  const auto i1 = upload(s1, "matchlog", text, "a");
  const auto i2 = upload(s2, "matchlog", text, "a");
  EXPECT_EQ(i1, i2);
  EXPECT_EQ(post(s1, "/athletes/a/fit", {{"dataset_id", i1}}).body,
            post(s2, "/athletes/a/fit", {{"dataset_id", i2}}).body);
}

TEST(Store, IndexListsExactlyStoredFiles) {
  TempDir dir;
  {
    Service s(dir.path(), quick(), fixed_clock);
    const auto id = upload(s, "matchlog", matchlog_text(7), "a");
    ASSERT_EQ(post(s, "/athletes/a/fit", {{"dataset_id", id}}).status, 200);
  }
  const auto index = json::parse(read_text_file(dir.path() / "index.json"));
  std::set<std::string> listed, on_disk;
  for (const auto& d : index["datasets"]) {
    listed.insert("datasets/" + d["id"].get<std::string>() + ".csv");
  }
  for (const auto& m : index["models"]) {
    listed.insert("models/" + m["id"].get<std::string>() + ".json");
  }
  for (const char* sub : {"datasets", "models"}) {
    for (const auto& e : fs::directory_iterator(dir.path() / sub)) {
      on_disk.insert(std::string(sub) + "/" + e.path().filename().string());
    }
  }
  EXPECT_EQ(listed, on_disk);
  EXPECT_EQ(index["models"].size(), 5u);
}

TEST(Store, CorruptionIsDetectedOnLoad) {
  TempDir dir;
  std::string id;
  {
    Service s(dir.path(), quick(), fixed_clock);
    id = upload(s, "matchlog", matchlog_text(8));
  }
  write_text_file(dir.path() / "datasets" / (id + ".csv"), "80,20\n");
  try {
    Service s(dir.path(), quick(), fixed_clock);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCorruptIndex);
    EXPECT_NE(std::string(e.what()).find(id), std::string::npos);
  }
  write_text_file(dir.path() / "index.json", "{not json");
  try {
    Store store(dir.path());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCorruptIndex);
  }
}

TEST(HttpServer, RoundTripOverSocket) {
  TempDir dir;
  HttpServer server(dir.path(), quick());
  const int port = server.bind("127.0.0.1", 0);
  ASSERT_GT(port, 0);
  std::thread worker([&] { server.listen(); });
  httplib::Client client("127.0.0.1", port);
  auto health = client.Get("/health");
  ASSERT_TRUE(health);
  EXPECT_EQ(health->status, 200);
  EXPECT_EQ(health->get_header_value("Access-Control-Allow-Origin"), "*");
  auto aimed = client.Get("/task1/aim?score=120&correct=196");
  ASSERT_TRUE(aimed);
  EXPECT_EQ(json::parse(aimed->body)["aim"], 176);
  const json body = {{"kind", "matchlog"}, {"body", "80,20\n"}};
  auto up = client.Post("/datasets", body.dump(), "application/json");
  ASSERT_TRUE(up);
  EXPECT_EQ(up->status, 201);
  server.stop();
  worker.join();
}

}  // namespace
}  // namespace memopace
