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
#include "core/quasipoly.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "core/error.hpp"

namespace delayplace {

namespace {

using BinomialTable =
    std::array<std::array<std::uint64_t, kMaxDerivativeOrder + 1>, kMaxDerivativeOrder + 1>;

constexpr BinomialTable make_binomial_table() {
  BinomialTable t{};
  for (int k = 0; k <= kMaxDerivativeOrder; ++k) {
    t[k][0] = 1;
    for (int j = 1; j <= k; ++j) t[k][j] = t[k - 1][j - 1] + (j < k ? t[k - 1][j] : 0);
  }
  return t;
}

constexpr BinomialTable kBinomials = make_binomial_table();

// k-th derivative of sum_i c_i s^i by Horner's rule on the differentiated
// coefficients; `leading` is an implicit extra top coefficient (1 for the
// monic part, 0 otherwise).
Complex horner_derivative(std::span<const double> c, double leading, Complex s, int k) {
  const int degree = static_cast<int>(c.size()) - (leading != 0.0 ? 0 : 1);
  if (k > degree) return 0.0;
  Complex acc = 0.0;
  for (int i = degree; i >= k; --i) {
    const double ci = (i == static_cast<int>(c.size())) ? leading : c[i];
    acc = acc * s + ci * falling_factorial(i, k);
  }
  return acc;
}

double max_abs(std::span<const double> v) {
  double out = 0.0;
  for (double x : v) out = std::max(out, std::abs(x));
  return out;
}

}  // namespace

std::uint64_t binomial(int k, int j) {
  if (k < 0 || k > kMaxDerivativeOrder) {
    throw_bad_input("binomial order out of range: " + std::to_string(k));
  }
  if (j < 0 || j > k) return 0;
  return kBinomials[k][j];
}

double falling_factorial(int i, int k) {
  if (k > i) return 0.0;
  double out = 1.0;
  for (int p = 0; p < k; ++p) out *= static_cast<double>(i - p);
  return out;
}

Quasipolynomial::Quasipolynomial(int n, int m, std::vector<double> a, std::vector<double> b,
                                 double tau)
    : n_(n), m_(m), a_(std::move(a)), b_(std::move(b)), tau_(tau) {
  if (m_ < 0 || n_ < m_) throw_bad_input("degrees must satisfy n >= m >= 0");
  if (n_ > kMaxDerivativeOrder) throw_bad_input("degree n too large");
  if (static_cast<int>(a_.size()) != n_) {
    throw_bad_input("expected " + std::to_string(n_) + " coefficients a_0..a_{n-1}, got " +
                    std::to_string(a_.size()));
  }
  if (static_cast<int>(b_.size()) != m_ + 1) {
    throw_bad_input("expected " + std::to_string(m_ + 1) + " coefficients b_0..b_m, got " +
                    std::to_string(b_.size()));
  }
  if (!(tau_ > 0.0) || !std::isfinite(tau_)) throw_bad_input("delay tau must be positive and finite");
  auto finite = [](double x) { return std::isfinite(x); };
  if (!std::all_of(a_.begin(), a_.end(), finite) || !std::all_of(b_.begin(), b_.end(), finite)) {
    throw_bad_input("coefficients must be finite");
  }
}

DelayType Quasipolynomial::type() const noexcept {
  return (n_ == m_ && b_[m_] != 0.0) ? DelayType::Neutral : DelayType::Retarded;
}

Complex Quasipolynomial::evaluate(Complex s) const {
  Complex p = 1.0;
  for (int i = n_ - 1; i >= 0; --i) p = p * s + a_[i];
  Complex q = 0.0;
  for (int j = m_; j >= 0; --j) q = q * s + b_[j];
  return p + std::exp(-s * tau_) * q;
}

Complex Quasipolynomial::derivative(Complex s, int k) const {
  if (k < 0 || k > kMaxDerivativeOrder) {
    throw_bad_input("derivative order must lie in [0, " + std::to_string(kMaxDerivativeOrder) + "]");
  }
  if (k == 0) return evaluate(s);
  const Complex p = horner_derivative(a_, 1.0, s, k);
  // sum_j C(k,j) (-tau)^(k-j) Q^(j)(s)
  Complex q = 0.0;
  double tau_power = 1.0;
  for (int j = k; j >= 0; --j) {
    if (j <= m_) q += static_cast<double>(kBinomials[k][j]) * tau_power * horner_derivative(b_, 0.0, s, j);
    tau_power *= -tau_;
  }
  return p + std::exp(-s * tau_) * q;
}

std::pair<Complex, Complex> Quasipolynomial::value_and_slope(Complex s) const {
  Complex p = 1.0;
  Complex dp = 0.0;
  for (int i = n_ - 1; i >= 0; --i) {
    dp = dp * s + p;
    p = p * s + a_[i];
  }
  Complex q = 0.0;
  Complex dq = 0.0;
  for (int j = m_; j >= 0; --j) {
    dq = dq * s + q;
    q = q * s + b_[j];
  }
  const Complex e = std::exp(-s * tau_);
  return {p + e * q, dp + e * (dq - tau_ * q)};
}

double Quasipolynomial::scale(Complex s) const {
  const double radius = std::max(1.0, std::abs(s));
  return std::pow(radius, n_) * (1.0 + max_abs(a_) + max_abs(b_) * std::exp(std::abs(s.real()) * tau_));
}

Quasipolynomial Quasipolynomial::with_delay(double tau) const {
  return Quasipolynomial(n_, m_, a_, b_, tau);
}

}  // namespace delayplace
