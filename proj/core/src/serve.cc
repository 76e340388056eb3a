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

#include <string>

#include "httplib.h"
#include "memopace/error.h"
#include "memopace/service.h"

namespace memopace {

struct HttpServer::Impl {
  Impl(std::filesystem::path dir, ServiceOptions opts)
      : service(std::move(dir), opts) {
    auto handler = [this](const httplib::Request& req,
                          httplib::Response& res) {
      HttpRequest request{req.method, req.path, {}, req.body};
      for (const auto& [k, v] : req.params) request.query.emplace(k, v);
      const auto response = service.handle(request);
      res.status = response.status;
      res.set_header("Access-Control-Allow-Origin", "*");
      res.set_content(response.body, response.content_type);
    };
    server.Get(".*", handler);
    server.Post(".*", handler);
    server.Options(".*", [](const httplib::Request&, httplib::Response& res) {
      res.set_header("Access-Control-Allow-Origin", "*");
      res.set_header("Access-Control-Allow-Headers", "Content-Type");
      res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
      res.status = 204;
    });
  }

  Service service;
  httplib::Server server;
};

HttpServer::HttpServer(std::filesystem::path data_dir, ServiceOptions opts)
    : impl_(std::make_unique<Impl>(std::move(data_dir), opts)) {}

HttpServer::~HttpServer() = default;

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool HttpServer::listen() { return impl_->server.listen_after_bind(); }

void HttpServer::stop() { impl_->server.stop(); }

bool serve(const std::string& addr, const std::filesystem::path& data_dir,
           ServiceOptions opts, const std::function<void(int)>& on_ready) {
  const auto colon = addr.rfind(':');
  if (colon == std::string::npos) {
    throw Error(ErrorCode::kBadArgument, "--addr must be HOST:PORT");
  }
  int port = 0;
  try {
    std::size_t used = 0;
    port = std::stoi(addr.substr(colon + 1), &used);
    if (used != addr.size() - colon - 1 || port < 0 || port > 65535) {
      throw std::invalid_argument("port");
    }
  } catch (const std::exception&) {
    throw Error(ErrorCode::kBadArgument, "bad port in '" + addr + "'");
  }
  HttpServer server(data_dir, opts);
  port = server.bind(addr.substr(0, colon), port);
  if (port < 0) return false;
  if (on_ready) on_ready(port);
  return server.listen();
}

}  // namespace memopace
