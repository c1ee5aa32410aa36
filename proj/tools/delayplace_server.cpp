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
// HTTP server for the delayplace operations. Every flag has an environment
// fallback (DELAYPLACE_ADDRESS, _PORT, _THREADS, _GRID, _STATIC_DIR).

#include <csignal>
#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "service/server.hpp"

namespace {

delayplace::service::Server* g_server = nullptr;

void on_signal(int) {
  if (g_server != nullptr) g_server->stop();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"delayplace HTTP service"};
  delayplace::service::ServerConfig cfg;
  std::vector<int> grid{cfg.grid_s0, cfg.grid_tau};
  app.add_option("--address", cfg.address, "listen address")->envname("DELAYPLACE_ADDRESS")->capture_default_str();
  app.add_option("--port", cfg.port, "listen port (0 picks a free one)")
      ->envname("DELAYPLACE_PORT")
      ->check(CLI::Range(0, 65535))
      ->capture_default_str();
  app.add_option("--threads", cfg.threads, "core thread budget (0 = all cores)")->envname("DELAYPLACE_THREADS");
  app.add_option("--grid", grid, "default admissibility grid Ns Nt")
      ->envname("DELAYPLACE_GRID")
      ->expected(2)
      ->delimiter(',');
  app.add_option("--static-dir", cfg.static_dir, "directory served at /")->envname("DELAYPLACE_STATIC_DIR");
  app.set_version_flag("--version", std::string(dp_version()));
  CLI11_PARSE(app, argc, argv);
  cfg.grid_s0 = grid[0];
  cfg.grid_tau = grid[1];

  try {
    delayplace::service::Server server(cfg);
    const int port = server.bind();
    g_server = &server;
    std::signal(SIGINT, on_signal);
    std::signal(SIGTERM, on_signal);
    std::cerr << "delayplace " << dp_version() << " listening on " << cfg.address << ":" << port << "\n";
    server.run();
    g_server = nullptr;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
