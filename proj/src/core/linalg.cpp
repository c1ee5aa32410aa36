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
#include "core/linalg.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <utility>

#include "core/error.hpp"

namespace delayplace {

namespace {

struct LuFactors {
  DenseMatrix lu;
  std::vector<std::size_t> perm;
};

LuFactors factor(DenseMatrix a) {
  const std::size_t n = a.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    for (std::size_t r = k + 1; r < n; ++r) {
      if (std::abs(a(r, k)) > std::abs(a(pivot, k))) pivot = r;
    }
    if (!(std::abs(a(pivot, k)) > 0.0) || !std::isfinite(a(pivot, k))) {
      throw Error(ErrorCode::SingularSystem, "linear system is singular (zero pivot)");
    }
    if (pivot != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a(k, c), a(pivot, c));
      std::swap(perm[k], perm[pivot]);
    }
    for (std::size_t r = k + 1; r < n; ++r) {
      const double f = a(r, k) / a(k, k);
      a(r, k) = f;
      for (std::size_t c = k + 1; c < n; ++c) a(r, c) -= f * a(k, c);
    }
  }
  return {std::move(a), std::move(perm)};
}

std::vector<double> substitute(const LuFactors& f, const std::vector<double>& rhs) {
  const std::size_t n = f.lu.size();
  std::vector<double> x(n);
  for (std::size_t r = 0; r < n; ++r) {
    double v = rhs[f.perm[r]];
    for (std::size_t c = 0; c < r; ++c) v -= f.lu(r, c) * x[c];
    x[r] = v;
  }
  for (std::size_t r = n; r-- > 0;) {
    double v = x[r];
    for (std::size_t c = r + 1; c < n; ++c) v -= f.lu(r, c) * x[c];
    x[r] = v / f.lu(r, r);
  }
  return x;
}

double norm1(const DenseMatrix& a) {
  double best = 0.0;
  for (std::size_t c = 0; c < a.size(); ++c) {
    double col = 0.0;
    for (std::size_t r = 0; r < a.size(); ++r) col += std::abs(a(r, c));
    best = std::max(best, col);
  }
  return best;
}

}  // namespace

LinearSolution solve_dense(DenseMatrix a, std::vector<double> rhs) {
  const std::size_t n = a.size();
  if (rhs.size() != n) throw Error(ErrorCode::Internal, "rhs size mismatch");

  // Row then column equilibration so that exp(-s0 tau) columns and factorial
  // rows do not masquerade as ill-conditioning.
  std::vector<double> col_scale(n, 1.0);
  for (std::size_t r = 0; r < n; ++r) {
    double big = 0.0;
    for (std::size_t c = 0; c < n; ++c) big = std::max(big, std::abs(a(r, c)));
    if (!(big > 0.0) || !std::isfinite(big)) {
      throw Error(ErrorCode::SingularSystem, "linear system has a vanishing or non-finite row");
    }
    for (std::size_t c = 0; c < n; ++c) a(r, c) /= big;
    rhs[r] /= big;
  }
  for (std::size_t c = 0; c < n; ++c) {
    double big = 0.0;
    for (std::size_t r = 0; r < n; ++r) big = std::max(big, std::abs(a(r, c)));
    if (!(big > 0.0)) throw Error(ErrorCode::SingularSystem, "linear system has a vanishing column");
    col_scale[c] = big;
    for (std::size_t r = 0; r < n; ++r) a(r, c) /= big;
  }

  const double a_norm = norm1(a);
  const LuFactors f = factor(a);

  // ||A^-1||_1 from explicit columns of the inverse; n is tiny.
  double inv_norm = 0.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<double> e(n, 0.0);
    e[c] = 1.0;
    const auto col = substitute(f, e);
    double s = 0.0;
    for (double v : col) s += std::abs(v);
    inv_norm = std::max(inv_norm, s);
  }
  const double condition = a_norm * inv_norm;
  if (!std::isfinite(condition) || condition > kMaxConditionNumber) {
    std::ostringstream msg;
    msg << "linear system is numerically singular (condition estimate " << condition << ")";
    throw Error(ErrorCode::SingularSystem, msg.str(), {{"condition_estimate", condition}});
  }

  auto x = substitute(f, rhs);
  for (std::size_t c = 0; c < n; ++c) x[c] /= col_scale[c];
  for (double v : x) {
    if (!std::isfinite(v)) throw Error(ErrorCode::SingularSystem, "linear solve produced non-finite values");
  }
  return {std::move(x), condition};
}

}  // namespace delayplace
