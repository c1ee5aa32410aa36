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

#include <cstddef>
#include <vector>

namespace delayplace {

/// Row-major square matrix; the design systems are at most a few dozen wide.
class DenseMatrix {
 public:
  explicit DenseMatrix(std::size_t size) : size_(size), data_(size * size, 0.0) {}

  std::size_t size() const noexcept { return size_; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * size_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * size_ + c]; }

 private:
  std::size_t size_;
  std::vector<double> data_;
};

struct LinearSolution {
  std::vector<double> x;
  double condition_estimate;  // 1-norm condition of the equilibrated matrix
};

inline constexpr double kMaxConditionNumber = 1e12;

/// Solves A x = rhs by LU with partial pivoting after row and column
/// equilibration. Throws Error{SingularSystem} when a pivot vanishes or the
/// condition estimate exceeds kMaxConditionNumber.
LinearSolution solve_dense(DenseMatrix a, std::vector<double> rhs);

}  // namespace delayplace
