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
// Reference computations used by the test suites. Each one is built on a
// different route from the library code it checks.
#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_bin_float.hpp>

namespace oracle {

using Complex = std::complex<double>;
using LComplex = std::complex<long double>;

/// Delta(z) in long double, straight from the definition.
inline LComplex delta(int n, int m, const std::vector<double>& a, const std::vector<double>& b, double tau,
                      LComplex z) {
  LComplex p = std::pow(z, n);
  for (int k = 0; k < n; ++k) p += static_cast<long double>(a[k]) * std::pow(z, k);
  LComplex q = 0;
  for (int k = 0; k <= m; ++k) q += static_cast<long double>(b[k]) * std::pow(z, k);
  return p + std::exp(-z * static_cast<long double>(tau)) * q;
}

/// k-th derivative by the Cauchy integral on a circle of radius r, evaluated
/// with the trapezoid rule (spectrally accurate for entire functions).
inline Complex cauchy_derivative(int n, int m, const std::vector<double>& a, const std::vector<double>& b,
                                 double tau, Complex s, int k, double r = 0.5, int points = 256) {
  LComplex sum = 0;
  const LComplex center(s.real(), s.imag());
  for (int j = 0; j < points; ++j) {
    const long double theta = 2.0L * std::numbers::pi_v<long double> * j / points;
    const LComplex w = std::polar(static_cast<long double>(r), theta);
    sum += delta(n, m, a, b, tau, center + w) / std::pow(w, k);
  }
  long double factorial = 1;
  for (int i = 2; i <= k; ++i) factorial *= i;
  const LComplex out = sum * factorial / static_cast<long double>(points);
  return {static_cast<double>(out.real()), static_cast<double>(out.imag())};
}

using Big = boost::multiprecision::cpp_bin_float_50;

/// d^k/ds^k [s^j] at real s.
inline Big monomial(int j, int k, const Big& s) {
  if (k > j) return 0;
  Big c = 1;
  for (int i = 0; i < k; ++i) c *= (j - i);
  return c * boost::multiprecision::pow(s, j - k);
}

/// exp(s tau) d^k/ds^k [exp(-s tau) s^j] by repeated product-rule expansion:
/// each derivative of f(s) exp(-s tau) maps f to f' - tau f.
inline Big delayed(int j, int k, const Big& s, const Big& tau) {
  // Coefficients of f = sum_c coef[c] s^c after k steps, kept exactly.
  std::vector<Big> coef(j + 1, 0);
  coef[j] = 1;
  for (int step = 0; step < k; ++step) {
    std::vector<Big> next(j + 1, 0);
    for (int c = 0; c <= j; ++c) {
      next[c] -= tau * coef[c];
      if (c > 0) next[c - 1] += c * coef[c];
    }
    coef = std::move(next);
  }
  Big acc = 0;
  for (int c = j; c >= 0; --c) acc = acc * s + coef[c];
  return acc;
}

/// Gauss-Jordan with partial pivoting in 50 digits.
inline std::vector<Big> solve(std::vector<std::vector<Big>> A, std::vector<Big> rhs) {
  const std::size_t N = rhs.size();
  for (std::size_t col = 0; col < N; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < N; ++r) {
      if (abs(A[r][col]) > abs(A[piv][col])) piv = r;
    }
    std::swap(A[piv], A[col]);
    std::swap(rhs[piv], rhs[col]);
    for (std::size_t r = 0; r < N; ++r) {
      if (r == col) continue;
      const Big f = A[r][col] / A[col][col];
      for (std::size_t c = col; c < N; ++c) A[r][c] -= f * A[col][c];
      rhs[r] -= f * rhs[col];
    }
  }
  for (std::size_t r = 0; r < N; ++r) rhs[r] /= A[r][r];
  return rhs;
}

/// Conditions (s_i, derivative order) -> (a_0..a_{n-1}, b_0..b_m) in 50 digits.
inline std::vector<double> design(int n, int m, double tau, const std::vector<std::pair<double, int>>& conditions) {
  const int N = n + m + 1;
  std::vector<std::vector<Big>> A(N, std::vector<Big>(N));
  std::vector<Big> rhs(N);
  const Big T(tau);
  for (int r = 0; r < N; ++r) {
    const Big s(conditions[r].first);
    const int k = conditions[r].second;
    const Big e = boost::multiprecision::exp(-s * T);
    for (int i = 0; i < n; ++i) A[r][i] = monomial(i, k, s);
    for (int j = 0; j <= m; ++j) A[r][n + j] = e * delayed(j, k, s, T);
    rhs[r] = -monomial(n, k, s);
  }
  const auto x = solve(A, rhs);
  std::vector<double> out;
  for (const auto& v : x) out.push_back(static_cast<double>(v));
  return out;
}

/// Zeros of s^n + a_{n-1} s^{n-1} + ... + a_0 from the companion matrix.
inline std::vector<Complex> polynomial_roots(const std::vector<double>& a) {
  const int n = static_cast<int>(a.size());
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) C(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) C(i, n - 1) = -a[i];
  Eigen::EigenSolver<Eigen::MatrixXd> es(C);
  std::vector<Complex> out;
  for (int i = 0; i < n; ++i) out.push_back(es.eigenvalues()[i]);
  return out;
}

/// Admissibility relation of the undamped oscillator s^2 + w^2 + b_0 e^{-s tau}.
inline double oscillator_relation(double s0, double tau, double w2) { return 2.0 * s0 + tau * (s0 * s0 + w2); }

}  // namespace oracle
