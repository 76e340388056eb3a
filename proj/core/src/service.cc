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

#include <openssl/evp.h>

#include <charconv>
#include <cmath>
#include <ctime>
#include <mutex>
#include <shared_mutex>
#include <system_error>

#include "json_codec.h"
#include "memopace/curvefit.h"
#include "memopace/dataset.h"
#include "memopace/pipelines.h"

namespace memopace {
namespace {

using json_codec::json;
namespace fs = std::filesystem;

constexpr std::size_t kIdHexChars = 16;

std::string_view kind_name(DatasetKind kind) {
  return kind == DatasetKind::kTask1 ? "task1" : "matchlog";
}

DatasetKind parse_kind(std::string_view name) {
  if (name == "task1") return DatasetKind::kTask1;
  if (name == "matchlog") return DatasetKind::kMatchlog;
  throw Error(ErrorCode::kBadArgument,
              "kind must be 'task1' or 'matchlog', got '" + std::string(name) +
                  "'");
}

[[noreturn]] void corrupt(const fs::path& file, const std::string& why) {
  throw Error(ErrorCode::kCorruptIndex, file.string() + ": " + why);
}

// An error already mapped to an HTTP status.
struct HttpError {
  int status;
  std::string code;
  std::string message;
  json detail = json::object();
};

int status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kBadArgument:
      return 400;
    case ErrorCode::kNotFound:
      return 404;
    case ErrorCode::kDuplicate:
      return 409;
    case ErrorCode::kIoError:
    case ErrorCode::kCorruptIndex:
      return 500;
    default:
      return 422;
  }
}

HttpResponse error_response(const HttpError& e) {
  json body = {{"code", e.code}, {"message", e.message}, {"detail", e.detail}};
  return {e.status, body.dump()};
}

HttpResponse from_error(const Error& e) {
  HttpError http{status_for(e.code()), std::string(to_string(e.code())),
                 e.what()};
  if (e.line()) http.detail["line"] = *e.line();
  return error_response(http);
}

HttpResponse ok(const json& body, int status = 200) {
  return {status, body.dump()};
}

[[noreturn]] void bad_request(const std::string& message) {
  throw Error(ErrorCode::kBadArgument, message);
}

const std::string* query_value(const HttpRequest& req, const std::string& key) {
  auto it = req.query.find(key);
  return it == req.query.end() ? nullptr : &it->second;
}

const std::string& require_query(const HttpRequest& req,
                                 const std::string& key) {
  const auto* v = query_value(req, key);
  if (!v) bad_request("missing query parameter '" + key + "'");
  return *v;
}

std::int64_t to_int(const std::string& text, const std::string& key) {
  std::int64_t v = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || text.empty()) {
    bad_request("'" + key + "' must be an integer, got '" + text + "'");
  }
  return v;
}

double to_double(const std::string& text, const std::string& key) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || text.empty() || !std::isfinite(v)) {
    bad_request("'" + key + "' must be a finite number, got '" + text + "'");
  }
  return v;
}

std::optional<double> optional_double(const HttpRequest& req,
                                      const std::string& key) {
  const auto* v = query_value(req, key);
  if (!v) return std::nullopt;
  return to_double(*v, key);
}

json parse_body(const HttpRequest& req) {
  json body = json::parse(req.body, nullptr, false);
  if (body.is_discarded() || !body.is_object()) {
    bad_request("request body must be a JSON object");
  }
  return body;
}

std::string body_string(const json& body, const std::string& key,
                        std::optional<std::string> fallback = std::nullopt) {
  auto it = body.find(key);
  if (it == body.end()) {
    if (fallback) return *fallback;
    bad_request("missing field '" + key + "'");
  }
  if (!it->is_string()) bad_request("field '" + key + "' must be a string");
  return it->get<std::string>();
}

std::uint64_t body_seed(const json& body) {
  auto it = body.find("seed");
  if (it == body.end()) return 0;
  if (!it->is_number_unsigned()) {
    bad_request("field 'seed' must be a non-negative integer");
  }
  return it->get<std::uint64_t>();
}

std::string loss_row(LossKind loss) {
  return std::string(loss == LossKind::kSquared ? kHyperbolaMeanRow
                                                : kHyperbolaMedianRow);
}

}  // namespace

DuplicateDataset::DuplicateDataset(std::string existing_id)
    : Error(ErrorCode::kDuplicate,
            "identical content already stored as " + existing_id),
      existing_id_(std::move(existing_id)) {}

std::string utc_now() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(),
                 nullptr) != 1) {
    throw Error(ErrorCode::kIoError, "SHA-256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xf];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Store
// ---------------------------------------------------------------------------

Store::Store(fs::path data_dir, Clock clock)
    : data_dir_(std::move(data_dir)), clock_(std::move(clock)) {
  std::error_code ec;
  fs::create_directories(data_dir_ / "datasets", ec);
  if (!ec) fs::create_directories(data_dir_ / "models", ec);
  if (ec) {
    throw Error(ErrorCode::kIoError,
                "cannot prepare " + data_dir_.string() + ": " + ec.message());
  }
  load();
}

void Store::load() {
  const auto index_path = data_dir_ / "index.json";
  if (!fs::exists(index_path)) return;
  json index = json::parse(read_text_file(index_path), nullptr, false);
  if (index.is_discarded() || !index.is_object()) {
    corrupt(index_path, "not a JSON object");
  }
  try {
    for (const auto& d : index.at("datasets")) {
      DatasetEntry e;
      e.id = d.at("id").get<std::string>();
      e.kind = parse_kind(d.at("kind").get<std::string>());
      e.name = d.at("name").get<std::string>();
      e.rows = d.at("rows").get<std::size_t>();
      e.created = d.at("created").get<std::string>();
      e.sha256 = d.at("sha256").get<std::string>();
      const auto file = data_dir_ / "datasets" / (e.id + ".csv");
      if (!fs::exists(file)) corrupt(file, "listed in index but missing");
      if (sha256_hex(read_text_file(file)) != e.sha256) {
        corrupt(file, "content hash does not match index");
      }
      datasets_.push_back(std::move(e));
    }
    for (const auto& m : index.at("models")) {
      StoredModel model;
      model.id = m.at("id").get<std::string>();
      model.kind = m.at("kind").get<std::string>();
      model.source_dataset = m.at("source_dataset").get<std::string>();
      const auto file = data_dir_ / "models" / (model.id + ".json");
      if (!fs::exists(file)) corrupt(file, "listed in index but missing");
      model.document = read_text_file(file);
      if (json::parse(model.document, nullptr, false).is_discarded()) {
        corrupt(file, "not valid JSON");
      }
      models_.emplace(model.id, std::move(model));
    }
    for (const auto& [name, a] : index.at("athletes").items()) {
      AthleteFit fit;
      fit.dataset_id = a.at("dataset_id").get<std::string>();
      fit.seed = a.at("seed").get<std::uint64_t>();
      fit.loss = a.at("loss").get<std::string>();
      fit.model_ids =
          a.at("model_ids").get<std::map<std::string, std::string>>();
      for (const auto& [row, id] : fit.model_ids) {
        if (!models_.count(id)) {
          corrupt(index_path, "athlete '" + name + "' references unknown model " + id);
        }
      }
      athletes_.emplace(name, std::move(fit));
    }
  } catch (const json::exception& e) {
    corrupt(index_path, e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kCorruptIndex) throw;
    corrupt(index_path, e.what());
  }
}

void Store::save_index() const {
  json datasets = json::array();
  for (const auto& e : datasets_) {
    datasets.push_back({{"id", e.id},
                        {"kind", std::string(kind_name(e.kind))},
                        {"name", e.name},
                        {"rows", e.rows},
                        {"created", e.created},
                        {"sha256", e.sha256}});
  }
  json models = json::array();
  for (const auto& [id, m] : models_) {
    models.push_back(
        {{"id", id}, {"kind", m.kind}, {"source_dataset", m.source_dataset}});
  }
  json athletes = json::object();
  for (const auto& [name, a] : athletes_) {
    athletes[name] = {{"dataset_id", a.dataset_id},
                      {"seed", a.seed},
                      {"loss", a.loss},
                      {"model_ids", a.model_ids}};
  }
  json index = {{"version", 1},
                {"datasets", std::move(datasets)},
                {"models", std::move(models)},
                {"athletes", std::move(athletes)}};
  write_text_file(data_dir_ / "index.json", index.dump(2) + "\n");
}

DatasetEntry Store::add_dataset(DatasetKind kind, const std::string& name,
                                std::size_t rows, const std::string& bytes) {
  const auto hash = sha256_hex(bytes);
  for (const auto& e : datasets_) {
    if (e.sha256 == hash) throw DuplicateDataset(e.id);
  }
  DatasetEntry e{"ds-" + hash.substr(0, kIdHexChars), kind, name, rows,
                 clock_(), hash};
  write_text_file(data_dir_ / "datasets" / (e.id + ".csv"), bytes);
  datasets_.push_back(e);
  save_index();
  return e;
}

std::vector<DatasetEntry> Store::datasets() const { return datasets_; }

std::optional<DatasetEntry> Store::find_dataset(const std::string& id) const {
  for (const auto& e : datasets_) {
    if (e.id == id) return e;
  }
  return std::nullopt;
}

std::string Store::dataset_bytes(const std::string& id) const {
  return read_text_file(data_dir_ / "datasets" / (id + ".csv"));
}

std::string Store::put_model(const std::string& kind,
                             const std::string& source_dataset,
                             const std::string& document) {
  const std::string id = "m-" + sha256_hex(document).substr(0, kIdHexChars);
  if (!models_.count(id)) {
    write_text_file(data_dir_ / "models" / (id + ".json"), document);
    models_.emplace(id, StoredModel{id, kind, source_dataset, document});
    save_index();
  }
  return id;
}

std::optional<StoredModel> Store::find_model(const std::string& id) const {
  auto it = models_.find(id);
  if (it == models_.end()) return std::nullopt;
  return it->second;
}

void Store::set_athlete(const std::string& name, AthleteFit fit) {
  athletes_[name] = std::move(fit);
  save_index();
}

std::optional<Store::AthleteFit> Store::find_athlete(
    const std::string& name) const {
  auto it = athletes_.find(name);
  if (it == athletes_.end()) return std::nullopt;
  return it->second;
}

// ---------------------------------------------------------------------------
// Service
// ---------------------------------------------------------------------------

struct Service::Impl {
  Impl(fs::path dir, ServiceOptions o, Clock clock)
      : store(std::move(dir), std::move(clock)), opts(o) {}

  Store store;
  ServiceOptions opts;
  std::shared_mutex mu;

  HttpResponse route(const HttpRequest& req);

  HttpResponse post_dataset(const HttpRequest& req);
  HttpResponse list_datasets();
  HttpResponse fit_task1(const HttpRequest& req);
  HttpResponse task1_aim(const HttpRequest& req);
  HttpResponse fit_athlete(const std::string& name, const HttpRequest& req);
  HttpResponse predict(const std::string& name, const HttpRequest& req);
  HttpResponse curve(const std::string& name, const HttpRequest& req);
  HttpResponse compare(const HttpRequest& req);

  DatasetEntry dataset_of_kind(const std::string& id, DatasetKind kind) const;
  json model_document(const std::string& id) const;

  struct AthleteCurve {
    std::string model_id;
    LossKind loss;
    HyperbolaCurve curve;
    double t_min, t_max;
  };
  AthleteCurve athlete_curve(const std::string& name,
                             const HttpRequest& req) const;
};

Service::Service(fs::path data_dir, ServiceOptions opts, Clock clock)
    : impl_(std::make_unique<Impl>(std::move(data_dir), opts,
                                   std::move(clock))) {}

Service::~Service() = default;

HttpResponse Service::handle(const HttpRequest& request) {
  try {
    return impl_->route(request);
  } catch (const HttpError& e) {
    return error_response(e);
  } catch (const DuplicateDataset& e) {
    return error_response(
        {409, "Duplicate", e.what(), {{"id", e.existing_id()}}});
  } catch (const Error& e) {
    return from_error(e);
  } catch (const json::exception& e) {
    return error_response({400, "BadArgument", e.what()});
  } catch (const std::exception& e) {
    return error_response({500, "Internal", e.what()});
  }
}

HttpResponse Service::Impl::route(const HttpRequest& req) {
  std::vector<std::string> parts;
  std::size_t pos = 0;
  const std::string& p = req.path;
  while (pos < p.size()) {
    if (p[pos] == '/') {
      ++pos;
      continue;
    }
    const auto next = p.find('/', pos);
    parts.push_back(p.substr(pos, next == std::string::npos ? std::string::npos
                                                            : next - pos));
    pos = next == std::string::npos ? p.size() : next;
  }
  const bool get = req.method == "GET";
  const bool post = req.method == "POST";

  if (parts.size() == 1 && parts[0] == "health" && get) {
    return ok({{"status", "ok"}});
  }
  if (parts.size() == 1 && parts[0] == "datasets") {
    if (post) return post_dataset(req);
    if (get) return list_datasets();
  }
  if (parts.size() == 2 && parts[0] == "task1") {
    if (parts[1] == "fit" && post) return fit_task1(req);
    if (parts[1] == "aim" && get) return task1_aim(req);
  }
  if (parts.size() == 3 && parts[0] == "athletes") {
    if (parts[2] == "fit" && post) return fit_athlete(parts[1], req);
    if (parts[2] == "predict" && get) return predict(parts[1], req);
    if (parts[2] == "curve" && get) return curve(parts[1], req);
  }
  if (parts.size() == 1 && parts[0] == "compare" && get) return compare(req);
  throw HttpError{404, "NotFound", "no route for " + req.method + " " + p};
}

DatasetEntry Service::Impl::dataset_of_kind(const std::string& id,
                                            DatasetKind kind) const {
  auto entry = store.find_dataset(id);
  if (!entry) throw Error(ErrorCode::kNotFound, "unknown dataset " + id);
  if (entry->kind != kind) {
    throw HttpError{422, "WrongKind",
                    "dataset " + id + " is " +
                        std::string(kind_name(entry->kind)) + ", expected " +
                        std::string(kind_name(kind))};
  }
  return *entry;
}

json Service::Impl::model_document(const std::string& id) const {
  auto model = store.find_model(id);
  if (!model) throw Error(ErrorCode::kNotFound, "unknown model " + id);
  return json::parse(model->document);
}

HttpResponse Service::Impl::post_dataset(const HttpRequest& req) {
  const json body = parse_body(req);
  const DatasetKind kind = parse_kind(body_string(body, "kind"));
  const std::string name = body_string(body, "name", "");
  const std::string text = body_string(body, "body");

  std::size_t rows = 0;
  std::vector<Error> errors;
  if (kind == DatasetKind::kTask1) {
    auto parsed = parse_task1_csv_collect(text);
    rows = parsed.rows.size();
    errors = std::move(parsed.errors);
  } else {
    auto parsed = parse_matchlog_collect(text);
    rows = parsed.rows.size();
    errors = std::move(parsed.errors);
  }
  if (!errors.empty()) {
    json list = json::array();
    for (const auto& e : errors) {
      list.push_back({{"line", e.line() ? json(*e.line()) : json(nullptr)},
                      {"code", std::string(to_string(e.code()))},
                      {"message", e.what()}});
    }
    HttpError err{422, std::string(to_string(errors.front().code())),
                  std::to_string(errors.size()) + " invalid row(s)"};
    err.detail["errors"] = std::move(list);
    if (errors.front().line()) err.detail["line"] = *errors.front().line();
    throw err;
  }

  std::unique_lock lock(mu);
  const auto entry = store.add_dataset(kind, name, rows, text);
  return ok({{"id", entry.id}, {"rows", entry.rows}}, 201);
}

HttpResponse Service::Impl::list_datasets() {
  std::shared_lock lock(mu);
  json list = json::array();
  for (const auto& e : store.datasets()) {
    list.push_back({{"id", e.id},
                    {"kind", std::string(kind_name(e.kind))},
                    {"name", e.name},
                    {"rows", e.rows},
                    {"created", e.created},
                    {"sha256", e.sha256}});
  }
  return ok({{"datasets", std::move(list)}});
}

HttpResponse Service::Impl::fit_task1(const HttpRequest& req) {
  const json body = parse_body(req);
  const std::string dataset_id = body_string(body, "dataset_id");
  const std::uint64_t seed = body_seed(body);

  std::unique_lock lock(mu);
  dataset_of_kind(dataset_id, DatasetKind::kTask1);
  const auto records = parse_task1_csv(store.dataset_bytes(dataset_id));
  const auto result = run_task1(records, seed);

  json cv = json::array();
  for (const auto& row : result.cv) cv.push_back(json_codec::encode(row));
  const json metrics = json_codec::encode(result.test);
  const json doc = {
      {"kind", "plane"},
      {"parameters", json_codec::encode(result.model)},
      {"source_dataset", dataset_id},
      {"options",
       {{"seed", seed},
        {"split", "random test_fraction " + format_decimal(result.test_fraction)},
        {"cleaned_count", result.cleaned.size()}}},
      {"metrics", metrics},
      {"cv_table", cv},
  };
  const auto model_id = store.put_model("plane", dataset_id, doc.dump(2));
  return ok({{"model_id", model_id},
             {"intercept", result.model.intercept},
             {"coefficients", result.model.coefficients},
             {"metrics", metrics},
             {"cv_table", cv},
             {"seed", seed}});
}

HttpResponse Service::Impl::task1_aim(const HttpRequest& req) {
  const auto* id_param = query_value(req, "model_id");
  const std::string model_id = id_param ? *id_param : kPublishedModelId;
  const auto score = to_int(require_query(req, "score"), "score");
  const auto correct = to_int(require_query(req, "correct"), "correct");
  const auto* rounding_param = query_value(req, "rounding");
  const RoundingMode mode =
      rounding_param ? parse_rounding(*rounding_param) : RoundingMode::kFloor;

  LinearModel plane;
  if (model_id == kPublishedModelId) {
    plane = published_plane();
  } else {
    std::shared_lock lock(mu);
    const json doc = model_document(model_id);
    if (doc.at("kind") != "plane") {
      throw HttpError{422, "WrongKind", "model " + model_id + " is not a plane"};
    }
    plane = json_codec::decode_linear(doc.at("parameters"));
  }
  const auto result = aim(plane, score, correct, mode);
  return ok({{"model_id", model_id},
             {"score", score},
             {"correct", correct},
             {"aim", result.aim},
             {"raw", result.raw},
             {"rounding", std::string(to_string(result.rounding))}});
}

HttpResponse Service::Impl::fit_athlete(const std::string& name,
                                        const HttpRequest& req) {
  const json body = parse_body(req);
  const std::string dataset_id = body_string(body, "dataset_id");
  const LossKind loss = parse_loss(body_string(body, "loss", "medae"));
  const std::uint64_t seed = body_seed(body);

  std::unique_lock lock(mu);
  dataset_of_kind(dataset_id, DatasetKind::kMatchlog);
  const auto samples = parse_matchlog(store.dataset_bytes(dataset_id));
  Task2Options opts;
  opts.athlete = name;
  opts.seed = seed;
  opts.primary_loss = loss;
  opts.forest_trees = this->opts.forest_trees;
  const auto report = run_task2(samples, opts);

  const json options = {{"seed", seed},
                        {"high_pct", report.high_pct},
                        {"low_pct", report.low_pct},
                        {"split", report.split_description},
                        {"t_min", report.t_min},
                        {"t_max", report.t_max},
                        {"forest_trees", opts.forest_trees},
                        {"best_depth", report.depth_sweep.best_depth}};
  auto store_model = [&](const std::string& kind, json parameters,
                         json extra = json::object()) {
    json doc = {{"kind", kind},
                {"athlete", name},
                {"parameters", std::move(parameters)},
                {"source_dataset", dataset_id},
                {"options", options}};
    for (auto& [k, v] : extra.items()) doc[k] = v;
    return store.put_model(kind, dataset_id, doc.dump(2));
  };

  Store::AthleteFit fit;
  fit.dataset_id = dataset_id;
  fit.seed = seed;
  fit.loss = std::string(to_string(loss));
  fit.model_ids[std::string(kHyperbolaMeanRow)] = store_model(
      "hyperbola_mean", json_codec::encode(report.mean_curve.curve),
      {{"fit", json_codec::encode(report.mean_curve)}});
  fit.model_ids[std::string(kHyperbolaMedianRow)] = store_model(
      "hyperbola_median", json_codec::encode(report.median_curve.curve),
      {{"fit", json_codec::encode(report.median_curve)}});
  fit.model_ids[std::string(kTreeRow)] =
      store_model("tree", json_codec::encode(report.tree));
  fit.model_ids[std::string(kForestRow)] =
      store_model("forest", json_codec::encode(report.forest));
  fit.model_ids[std::string(kBoostRow)] =
      store_model("boost", json_codec::encode(report.boost));
  store.set_athlete(name, fit);

  return ok({{"athlete", name},
             {"dataset_id", dataset_id},
             {"seed", seed},
             {"loss", fit.loss},
             {"model_ids", fit.model_ids},
             {"comparison_table", json_codec::encode(report.comparison)},
             {"time_range", {report.t_min, report.t_max}}});
}

Service::Impl::AthleteCurve Service::Impl::athlete_curve(
    const std::string& name, const HttpRequest& req) const {
  const auto fit = store.find_athlete(name);
  if (!fit) throw Error(ErrorCode::kNotFound, "no fitted athlete '" + name + "'");
  const auto* loss_param = query_value(req, "loss");
  const LossKind loss = parse_loss(loss_param ? *loss_param : fit->loss);
  const std::string id = fit->model_ids.at(loss_row(loss));
  const json doc = model_document(id);
  const auto& opts = doc.at("options");
  return {id, loss, json_codec::decode_curve(doc.at("parameters")),
          opts.at("t_min").get<double>(), opts.at("t_max").get<double>()};
}

HttpResponse Service::Impl::predict(const std::string& name,
                                    const HttpRequest& req) {
  const double t = to_double(require_query(req, "time"), "time");
  std::shared_lock lock(mu);
  const auto c = athlete_curve(name, req);
  return ok({{"athlete", name},
             {"loss", std::string(to_string(c.loss))},
             {"model_id", c.model_id},
             {"time", t},
             {"quantity_int", predict_quantity(c.curve, t)},
             {"quantity_raw_capped", predict_capped(c.curve, t)}});
}

HttpResponse Service::Impl::curve(const std::string& name,
                                  const HttpRequest& req) {
  std::shared_lock lock(mu);
  const auto c = athlete_curve(name, req);
  const double t_min = optional_double(req, "t_min").value_or(c.t_min);
  const double t_max = optional_double(req, "t_max").value_or(c.t_max);
  const double step = optional_double(req, "step").value_or(0.1);
  const auto grid = evaluate_grid(c.curve, t_min, t_max, step);
  json ts = json::array(), values = json::array();
  for (const auto& p : grid) {
    ts.push_back(p.t);
    values.push_back(p.value);
  }
  return ok({{"athlete", name},
             {"loss", std::string(to_string(c.loss))},
             {"model_id", c.model_id},
             {"curve", json_codec::encode(c.curve)},
             {"t_min", t_min},
             {"t_max", t_max},
             {"step", step},
             {"t", std::move(ts)},
             {"quantity_capped", std::move(values)}});
}

HttpResponse Service::Impl::compare(const HttpRequest& req) {
  const std::string name_a = require_query(req, "athlete_a");
  const std::string name_b = require_query(req, "athlete_b");
  std::shared_lock lock(mu);
  const auto a = athlete_curve(name_a, req);
  const auto b = athlete_curve(name_b, req);
  const double t_min =
      optional_double(req, "t_min").value_or(std::min(a.t_min, b.t_min));
  const double t_max =
      optional_double(req, "t_max").value_or(std::max(a.t_max, b.t_max));
  const double step = optional_double(req, "step").value_or(0.1);
  const auto report = compare_athletes(a.curve, b.curve, t_min, t_max, step);
  json crossings = json::array();
  for (const auto& c : report.crossovers) {
    crossings.push_back({{"t_lo", c.t_lo}, {"t_hi", c.t_hi}});
  }
  return ok({{"athlete_a", name_a},
             {"athlete_b", name_b},
             {"model_a", a.model_id},
             {"model_b", b.model_id},
             {"t_min", t_min},
             {"t_max", t_max},
             {"step", step},
             {"grid", report.grid},
             {"a", report.a_values},
             {"b", report.b_values},
             {"crossovers", std::move(crossings)}});
}

}  // namespace memopace
