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
#pragma once

#include <memory>
#include <string>

#include "delayplace/delayplace.h"

namespace delayplace::service {

struct ServerConfig {
  std::string address = "127.0.0.1";
  int port = 8080;
  /// Core thread budget; 0 uses the hardware concurrency.
  unsigned threads = 0;
  int grid_s0 = 400;
  int grid_tau = 400;
  /// Served at "/" when non-empty.
  std::string static_dir;
};

/// HTTP status for a library status code.
int http_status(dp_status status);

class Server {
 public:
  explicit Server(ServerConfig config);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  /// Binds the socket and returns the bound port (useful with port 0).
  /// Throws std::runtime_error when binding fails.
  int bind();
  /// Serves until stop(); bind() must have succeeded.
  void run();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace delayplace::service
