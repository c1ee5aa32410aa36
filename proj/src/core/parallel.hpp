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

#include <atomic>
#include <chrono>
#include <cstddef>
#include <functional>
#include <optional>

namespace delayplace {

/// Process-wide cap on worker threads used by grid and subdivision work.
/// Zero means "use std::thread::hardware_concurrency()".
void set_thread_budget(unsigned threads);
unsigned thread_budget();

/// Cooperative deadline shared by the workers of one request. check() throws
/// Error{DeadlineExceeded} carrying the progress counters once expired.
class Deadline {
 public:
  Deadline() = default;
  explicit Deadline(std::chrono::milliseconds budget);

  bool expired() const;
  void check() const;

  void set_total(std::size_t total) const { total_.store(total); }
  void advance(std::size_t done = 1) const { completed_.fetch_add(done); }

 private:
  std::optional<std::chrono::steady_clock::time_point> until_;
  mutable std::atomic<std::size_t> completed_{0};
  mutable std::atomic<std::size_t> total_{0};
};

inline void check_deadline(const Deadline* deadline) {
  if (deadline != nullptr) deadline->check();
}

/// Runs body(i) for i in [0, count) on up to thread_budget() threads. The first
/// exception thrown by any worker is rethrown on the calling thread after all
/// workers have stopped.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace delayplace
