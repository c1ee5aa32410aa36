/*
Copyright 2026 The delayplace Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/
#include "service/server.hpp"

#include <stdexcept>
#include <string_view>
#include <utility>

#include "httplib.h"

namespace delayplace::service {

namespace {

struct Route {
  const char* path;
  const char* operation;
};

constexpr Route kRoutes[] = {
    {"/design/generic-mid", "generic-mid"},
    {"/design/generic-crrid", "generic-crrid"},
    {"/design/control-mid", "control-mid"},
    {"/admissibility", "admissibility"},
    {"/roots", "roots"},
    {"/sensitivity", "sensitivity"},
    {"/simulate", "simulate"},
    {"/report", "report"},
};

bool wants_csv(const httplib::Request& req) {
  if (req.has_param("format")) return req.get_param_value("format") == "csv";
  const std::string accept = req.get_header_value("Accept");
  return accept.find("text/csv") != std::string::npos;
}

struct Document {
  dp_document* doc = nullptr;
  ~Document() { dp_document_destroy(doc); }
};

}  // namespace

int http_status(dp_status status) {
  switch (status) {
    case DP_OK: return 200;
    case DP_ERR_MALFORMED_REQUEST: return 400;
    case DP_ERR_DEADLINE_EXCEEDED: return 408;
    case DP_ERR_INTERNAL: return 500;
    default: return 422;
  }
}

struct Server::Impl {
  ServerConfig config;
  httplib::Server http;
  int port = -1;
};

Server::Server(ServerConfig config) : impl_(std::make_unique<Impl>()) {
  impl_->config = std::move(config);
  dp_set_thread_budget(impl_->config.threads);
  if (dp_set_default_grid(impl_->config.grid_s0, impl_->config.grid_tau) != DP_OK) {
    throw std::runtime_error(dp_last_error());
  }

  auto& http = impl_->http;
  http.set_payload_max_length(64u << 20);

  for (const Route& route : kRoutes) {
    const std::string operation = route.operation;
    http.Post(route.path, [operation](const httplib::Request& req, httplib::Response& res) {
      const bool csv = wants_csv(req);
      Document out;
      const dp_status status =
          dp_execute(operation.c_str(), req.body.c_str(), csv ? DP_FORMAT_CSV : DP_FORMAT_JSON, &out.doc);
      res.status = http_status(status);
      if (out.doc == nullptr) {
        res.set_content(R"({"code":"internal","message":"allocation failed"})", "application/json");
        return;
      }
      const char* type = status == DP_OK && csv ? "text/csv" : "application/json";
      res.set_content(std::string(dp_document_text(out.doc), dp_document_size(out.doc)), type);
    });
  }

  http.Get("/health", [](const httplib::Request&, httplib::Response& res) {
    Document out;
    res.status = http_status(dp_health(&out.doc));
    res.set_content(out.doc ? dp_document_text(out.doc) : "{}", "application/json");
  });

  if (!impl_->config.static_dir.empty() && !http.set_mount_point("/", impl_->config.static_dir)) {
    throw std::runtime_error("static directory not found: " + impl_->config.static_dir);
  }
}

Server::~Server() { stop(); }

int Server::bind() {
  auto& cfg = impl_->config;
  if (cfg.port == 0) {
    impl_->port = impl_->http.bind_to_any_port(cfg.address);
  } else {
    impl_->port = impl_->http.bind_to_port(cfg.address, cfg.port) ? cfg.port : -1;
  }
  if (impl_->port < 0) throw std::runtime_error("cannot bind " + cfg.address + ":" + std::to_string(cfg.port));
  return impl_->port;
}

void Server::run() {
  if (impl_->port < 0) throw std::runtime_error("server is not bound");
  impl_->http.listen_after_bind();
}

void Server::stop() {
  if (impl_ && impl_->http.is_running()) impl_->http.stop();
}

}  // namespace delayplace::service
