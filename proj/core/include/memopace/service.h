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

#ifndef MEMOPACE_SERVICE_H_
#define MEMOPACE_SERVICE_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "memopace/error.h"

namespace memopace {

struct HttpRequest {
  std::string method;  // "GET", "POST"
  std::string path;    // already percent-decoded
  std::map<std::string, std::string> query;
  std::string body;
};

struct HttpResponse {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

enum class DatasetKind { kTask1, kMatchlog };

struct DatasetEntry {
  std::string id;
  DatasetKind kind = DatasetKind::kTask1;
  std::string name;  // athlete name, matchlog only
  std::size_t rows = 0;
  std::string created;  // UTC, set once at upload and persisted
  std::string sha256;
};

struct StoredModel {
  std::string id;
  std::string kind;  // plane, hyperbola_mean, hyperbola_median, tree, forest, boost
  std::string source_dataset;
  std::string document;  // full JSON parameter document as stored on disk
};

// Raised by Store::add_dataset when the same bytes were already uploaded.
class DuplicateDataset : public Error {
 public:
  explicit DuplicateDataset(std::string existing_id);
  const std::string& existing_id() const noexcept { return existing_id_; }

 private:
  std::string existing_id_;
};

// Returns the current UTC time as "YYYY-MM-DDTHH:MM:SSZ".
using Clock = std::function<std::string()>;
std::string utc_now();

// Hex SHA-256 of |bytes|.
std::string sha256_hex(std::string_view bytes);

// File-backed store rooted at a data directory:
//   index.json         dataset entries, model ids, athlete registry
//   datasets/<id>.csv  raw uploaded bytes
//   models/<id>.json   parameter documents
// Writes go through write-temp-then-rename. Loading a damaged index or an
// index that disagrees with the files on disk raises CorruptIndex.
class Store {
 public:
  explicit Store(std::filesystem::path data_dir, Clock clock = utc_now);

  const std::filesystem::path& data_dir() const { return data_dir_; }

  struct AthleteFit {
    std::string dataset_id;
    std::uint64_t seed = 0;
    std::string loss;  // primary loss of the fit
    std::map<std::string, std::string> model_ids;
  };

  // Throws Duplicate (carrying the existing id) when the content hash exists.
  DatasetEntry add_dataset(DatasetKind kind, const std::string& name,
                           std::size_t rows, const std::string& bytes);
  std::vector<DatasetEntry> datasets() const;
  std::optional<DatasetEntry> find_dataset(const std::string& id) const;
  std::string dataset_bytes(const std::string& id) const;

  // Stores |document| under a content-derived id and returns the id.
  std::string put_model(const std::string& kind,
                        const std::string& source_dataset,
                        const std::string& document);
  std::optional<StoredModel> find_model(const std::string& id) const;

  void set_athlete(const std::string& name, AthleteFit fit);
  std::optional<AthleteFit> find_athlete(const std::string& name) const;

 private:
  void load();
  void save_index() const;

  std::filesystem::path data_dir_;
  Clock clock_;
  std::vector<DatasetEntry> datasets_;
  std::map<std::string, StoredModel> models_;
  std::map<std::string, AthleteFit> athletes_;
};

struct ServiceOptions {
  int forest_trees = 100;
};

// Request handler over a Store. Reads take a shared lock, writes an
// exclusive one, so one Service may be driven from many threads.
class Service {
 public:
  explicit Service(std::filesystem::path data_dir, ServiceOptions opts = {},
                   Clock clock = utc_now);
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  HttpResponse handle(const HttpRequest& request);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Id of the built-in reference plane, always available to /task1/aim.
inline constexpr const char* kPublishedModelId = "published";

// HTTP/1.1 front end for a Service. bind() then listen(); stop() may be
// called from another thread to make listen() return.
class HttpServer {
 public:
  HttpServer(std::filesystem::path data_dir, ServiceOptions opts = {});
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Port 0 picks a free port. Returns the bound port, or -1 on failure.
  int bind(const std::string& host, int port);
  bool listen();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Blocks serving HTTP on |addr| ("host:port"). Returns false if the bind
// fails. |on_ready| is invoked with the bound port once listening.
bool serve(const std::string& addr, const std::filesystem::path& data_dir,
           ServiceOptions opts = {},
           const std::function<void(int)>& on_ready = {});

}  // namespace memopace

#endif  // MEMOPACE_SERVICE_H_
