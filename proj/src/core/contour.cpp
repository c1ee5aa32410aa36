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
#include "core/contour.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "core/error.hpp"

namespace delayplace {

namespace {

constexpr int kGaussNodes = 16;
constexpr std::size_t kEvaluationBudget = 4'000'000;

struct GaussLegendre {
  std::array<double, kGaussNodes> nodes{};
  std::array<double, kGaussNodes> weights{};

  GaussLegendre() {
    // Newton on P_16 from the Chebyshev-like initial guesses.
    for (int i = 0; i < kGaussNodes; ++i) {
      double x = std::cos(std::numbers::pi * (i + 0.75) / (kGaussNodes + 0.5));
      double dp = 0.0;
      for (int iter = 0; iter < 100; ++iter) {
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= kGaussNodes; ++k) {
          const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = kGaussNodes * (x * p1 - p0) / (x * x - 1.0);
        const double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-16) break;
      }
      nodes[i] = x;
      weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
  }
};

const GaussLegendre& gauss_legendre() {
  static const GaussLegendre rule;
  return rule;
}

double max_abs(std::span<const double> v) {
  double out = 0.0;
  for (double x : v) out = std::max(out, std::abs(x));
  return out;
}

using Moments = std::vector<Complex>;

struct Integrator {
  const Quasipolynomial& q;
  Complex center;
  double radius;
  int max_power;
  const QuadratureOptions& options;
  const Deadline* deadline;
  double min_relative = std::numeric_limits<double>::infinity();
  std::size_t evaluations = 0;
  std::size_t splits = 0;
  bool converged = true;

  Moments panel(Complex za, Complex zb) {
    const auto& rule = gauss_legendre();
    const Complex half = 0.5 * (zb - za);
    const Complex mid = 0.5 * (za + zb);
    Moments out(max_power + 1, 0.0);
    for (int i = 0; i < kGaussNodes; ++i) {
      const Complex z = mid + half * rule.nodes[i];
      const LogDerivative ld = log_derivative(q, z);
      min_relative = std::min(min_relative, ld.relative_modulus);
      Complex term = ld.value * half * rule.weights[i];
      const Complex w = (z - center) / radius;
      for (int p = 0; p <= max_power; ++p) {
        out[p] += term;
        term *= w;
      }
    }
    evaluations += kGaussNodes;
    return out;
  }

  void adapt(Complex za, Complex zb, const Moments& whole, double tol, int depth, Moments& acc) {
    const Complex mid = 0.5 * (za + zb);
    Moments left = panel(za, mid);
    Moments right = panel(mid, zb);
    double diff = 0.0;
    double size = 0.0;
    for (int p = 0; p <= max_power; ++p) {
      diff = std::max(diff, std::abs(whole[p] - left[p] - right[p]));
      size = std::max(size, std::abs(left[p]) + std::abs(right[p]));
    }
    const bool finite = std::isfinite(diff);
    const bool accept = finite && diff <= std::max(tol, 1e-14 * size);
    if (accept || !finite || depth >= options.max_depth || evaluations > kEvaluationBudget) {
      if (!accept) converged = false;
      for (int p = 0; p <= max_power; ++p) acc[p] += left[p] + right[p];
      return;
    }
    if (deadline != nullptr && ++splits % 256 == 0) deadline->check();
    adapt(za, mid, left, 0.5 * tol, depth + 1, acc);
    adapt(mid, zb, right, 0.5 * tol, depth + 1, acc);
  }
};

}  // namespace

void ComplexRectangle::validate() const {
  if (!std::isfinite(x_min) || !std::isfinite(x_max) || !std::isfinite(y_min) ||
      !std::isfinite(y_max)) {
    throw_bad_input("rectangle bounds must be finite");
  }
  if (!(x_min < x_max) || !(y_min < y_max)) {
    throw_bad_input("rectangle requires x_min < x_max and y_min < y_max");
  }
}

double ComplexRectangle::diagonal() const { return std::hypot(width(), height()); }

LogDerivative log_derivative(const Quasipolynomial& q, Complex s) {
  const auto a = q.a();
  const auto b = q.b();
  const double tau = q.tau();
  Complex p = 1.0, dp = 0.0;
  for (int i = q.n() - 1; i >= 0; --i) {
    dp = dp * s + p;
    p = p * s + a[i];
  }
  Complex qq = 0.0, dq = 0.0;
  for (int j = q.m(); j >= 0; --j) {
    dq = dq * s + qq;
    qq = qq * s + b[j];
  }
  const Complex exponent = -s * tau;
  const double radius_power = std::pow(std::max(1.0, std::abs(s)), q.n());
  const double coeff_a = 1.0 + max_abs(a);
  const double coeff_b = max_abs(b);

  Complex num, den;
  double scale;
  if (exponent.real() > 0.0) {
    // Divide through by exp(-s tau), which dominates on this half-plane.
    const Complex inv = std::exp(-exponent);
    num = dp * inv + (dq - tau * qq);
    den = p * inv + qq;
    scale = radius_power * (coeff_a * std::exp(-exponent.real()) + coeff_b);
  } else {
    const Complex e = std::exp(exponent);
    num = dp + e * (dq - tau * qq);
    den = p + e * qq;
    // Re s >= 0: the delayed term is bounded by |Q|, not inflated by e^{|Re s| tau}.
    scale = radius_power * (coeff_a + coeff_b * std::exp(exponent.real()));
  }
  return {num / den, std::abs(den) / scale};
}

ContourMoments contour_moments(const Quasipolynomial& q, const ComplexRectangle& rect,
                               int max_power, const QuadratureOptions& options,
                               const Deadline* deadline) {
  rect.validate();
  const Complex center = rect.center();
  const double radius = 0.5 * std::max(rect.width(), rect.height());
  Integrator integrator{q, center, radius, max_power, options, deadline};

  const std::array<Complex, 5> corners = {Complex{rect.x_min, rect.y_min}, Complex{rect.x_max, rect.y_min},
                                          Complex{rect.x_max, rect.y_max}, Complex{rect.x_min, rect.y_max},
                                          Complex{rect.x_min, rect.y_min}};
  const double perimeter = 2.0 * (rect.width() + rect.height());
  // Tolerance is on the 1/(2 pi i)-normalised integral.
  const double total_tol = options.tolerance * 2.0 * std::numbers::pi;

  Moments acc(max_power + 1, 0.0);
  for (int e = 0; e < 4; ++e) {
    const Complex za = corners[e];
    const Complex zb = corners[e + 1];
    const double length = std::abs(zb - za);
    // exp(-s tau) turns once per 2 pi / tau along vertical edges; start from
    // a few panels per turn.
    int panels = std::max(4, static_cast<int>(std::ceil(length * q.tau() / 2.0)));
    panels = std::min(panels, 1 << 14) << std::clamp(options.refinement, 0, 8);
    const double tol = total_tol * (length / perimeter) / panels;
    for (int k = 0; k < panels; ++k) {
      const Complex pa = za + (zb - za) * (static_cast<double>(k) / panels);
      const Complex pb = za + (zb - za) * (static_cast<double>(k + 1) / panels);
      const Moments whole = integrator.panel(pa, pb);
      integrator.adapt(pa, pb, whole, tol, 0, acc);
    }
  }
  const Complex to_count = 1.0 / Complex(0.0, 2.0 * std::numbers::pi);
  for (auto& v : acc) v *= to_count;
  return {std::move(acc), center, radius, integrator.min_relative, integrator.converged};
}

Complex winding_integral(const Quasipolynomial& q, const ComplexRectangle& rect,
                         const QuadratureOptions& options) {
  return contour_moments(q, rect, 0, options).moments[0];
}

int count_roots(const Quasipolynomial& q, const ComplexRectangle& rect,
                const QuadratureOptions& options, const Deadline* deadline) {
  rect.validate();
  QuadratureOptions attempt = options;
  double last_min = 0.0;
  Complex last_value = 0.0;
  for (int level = 0; level < 3; ++level) {
    attempt.refinement = options.refinement + level;
    const auto m = contour_moments(q, rect, 0, attempt, deadline);
    last_min = m.min_relative_modulus;
    last_value = m.moments[0];
    if (!(m.min_relative_modulus >= kContourClearance)) {
      std::ostringstream msg;
      msg << "contour passes within " << m.min_relative_modulus
          << " (relative |Delta|) of a zero";
      throw Error(ErrorCode::ContourTooClose, msg.str(),
                  {{"min_relative_modulus", m.min_relative_modulus}});
    }
    const double rounded = std::round(last_value.real());
    if (m.converged && rounded >= 0.0 && std::abs(last_value.real() - rounded) < 1e-2 &&
        std::abs(last_value.imag()) < 1e-2) {
      return static_cast<int>(rounded);
    }
  }
  std::ostringstream msg;
  msg << "winding integral did not settle on an integer (" << last_value << ")";
  throw Error(ErrorCode::ContourTooClose, msg.str(),
              {{"min_relative_modulus", last_min}, {"winding_real", last_value.real()},
               {"winding_imag", last_value.imag()}});
}

std::optional<int> circle_count(const Quasipolynomial& q, Complex center, double radius) {
  std::optional<Complex> previous;
  for (int points = 32; points <= 4096; points *= 2) {
    Complex sum = 0.0;
    for (int j = 0; j < points; ++j) {
      const Complex offset = std::polar(radius, 2.0 * std::numbers::pi * j / points);
      sum += log_derivative(q, center + offset).value * offset;
    }
    sum /= static_cast<double>(points);
    if (!std::isfinite(sum.real()) || !std::isfinite(sum.imag())) return std::nullopt;
    const double rounded = std::round(sum.real());
    if (previous && std::abs(sum - *previous) < 1e-3 && rounded >= 0.0 &&
        std::abs(sum.real() - rounded) < 1e-2 && std::abs(sum.imag()) < 1e-2) {
      return static_cast<int>(rounded);
    }
    previous = sum;
  }
  return std::nullopt;
}

}  // namespace delayplace
