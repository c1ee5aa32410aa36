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

#include <complex>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace delayplace {

using Complex = std::complex<double>;

/// Largest derivative order accepted anywhere (exact binomials up to here).
inline constexpr int kMaxDerivativeOrder = 64;

enum class DelayType { Retarded, Neutral };

/// Characteristic function of the single-delay equation
///
///   y^(n)(t) + sum_{k<n} a_k y^(k)(t) + sum_{k<=m} b_k y^(k)(t - tau) = 0,
///
/// i.e. Delta(s) = P(s) + exp(-s tau) Q(s) with P monic of degree n and
/// Q = b_0 + ... + b_m s^m. Immutable once constructed.
class Quasipolynomial {
 public:
  /// Throws Error{BadInput} unless n >= m >= 0, |a| = n, |b| = m + 1,
  /// tau > 0 and every coefficient is finite.
  Quasipolynomial(int n, int m, std::vector<double> a, std::vector<double> b, double tau);

  int n() const noexcept { return n_; }
  int m() const noexcept { return m_; }
  std::span<const double> a() const noexcept { return a_; }
  std::span<const double> b() const noexcept { return b_; }
  double tau() const noexcept { return tau_; }

  /// Neutral iff n == m and b_n != 0. A vanishing b_n with n == m leaves a
  /// retarded equation of lower delayed order.
  DelayType type() const noexcept;

  Complex evaluate(Complex s) const;

  /// Exact k-th derivative (Leibniz rule on the delayed product). k = 0 is
  /// evaluate(). Throws Error{BadInput} for k > kMaxDerivativeOrder.
  Complex derivative(Complex s, int k) const;

  /// Delta(s) and Delta'(s) sharing one exponential.
  std::pair<Complex, Complex> value_and_slope(Complex s) const;

  /// Magnitude reference for residual tests:
  /// max(1,|s|)^n (1 + max|a_k| + max|b_k| exp(|Re s| tau)).
  double scale(Complex s) const;

  Quasipolynomial with_delay(double tau) const;

 private:
  int n_;
  int m_;
  std::vector<double> a_;
  std::vector<double> b_;
  double tau_;
};

/// C(k, j) in exact integer arithmetic, 0 <= j <= k <= kMaxDerivativeOrder.
std::uint64_t binomial(int k, int j);

/// i (i-1) ... (i-k+1); zero when k > i.
double falling_factorial(int i, int k);

/// d^k/ds^k s^i.
template <typename T>
T monomial_derivative(int i, int k, T s) {
  if (k > i) return T(0);
  T power(1);
  for (int p = 0; p < i - k; ++p) power *= s;
  return falling_factorial(i, k) * power;
}

/// exp(s tau) d^k/ds^k [exp(-s tau) s^j]
///   = sum_l C(k,l) (-tau)^(k-l) d^l/ds^l s^j.
template <typename T>
T delayed_monomial_derivative(int j, int k, T s, double tau) {
  T sum(0);
  double tau_power = 1.0;  // (-tau)^(k-l), built from l = k downwards
  for (int l = k; l >= 0; --l) {
    if (l <= j) {
      sum += static_cast<double>(binomial(k, l)) * tau_power * monomial_derivative(j, l, s);
    }
    tau_power *= -tau;
  }
  return sum;
}

}  // namespace delayplace
