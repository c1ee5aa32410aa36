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
#include "core/parallel.hpp"

#include <algorithm>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "core/error.hpp"

namespace delayplace {

namespace {
std::atomic<unsigned> g_thread_budget{0};
}

void set_thread_budget(unsigned threads) { g_thread_budget.store(threads); }

unsigned thread_budget() {
  const unsigned configured = g_thread_budget.load();
  if (configured != 0) return configured;
  return std::max(1u, std::thread::hardware_concurrency());
}

Deadline::Deadline(std::chrono::milliseconds budget)
    : until_(std::chrono::steady_clock::now() + budget) {}

bool Deadline::expired() const {
  return until_ && std::chrono::steady_clock::now() >= *until_;
}

void Deadline::check() const {
  if (!expired()) return;
  throw Error(ErrorCode::DeadlineExceeded, "request deadline exceeded",
              {{"completed", static_cast<double>(completed_.load())},
               {"total", static_cast<double>(total_.load())}});
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  if (count == 0) return;
  const std::size_t workers = std::min<std::size_t>(thread_budget(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::mutex error_mutex;

  auto worker = [&] {
    while (!failed.load()) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        failed.store(true);
      }
    }
  };

  std::vector<std::jthread> pool;
  pool.reserve(workers - 1);
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  pool.clear();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace delayplace
