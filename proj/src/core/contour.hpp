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

#include <optional>
#include <vector>

#include "core/parallel.hpp"
#include "core/quasipoly.hpp"

namespace delayplace {

/// [x_min, x_max] x [y_min, y_max] in the complex plane.
struct ComplexRectangle {
  double x_min;
  double x_max;
  double y_min;
  double y_max;

  /// Throws Error{BadInput} unless finite with x_min < x_max, y_min < y_max.
  void validate() const;

  double width() const { return x_max - x_min; }
  double height() const { return y_max - y_min; }
  double diagonal() const;
  Complex center() const { return {0.5 * (x_min + x_max), 0.5 * (y_min + y_max)}; }
  bool contains(Complex z) const {
    return z.real() > x_min && z.real() < x_max && z.imag() > y_min && z.imag() < y_max;
  }
  bool symmetric_about_real_axis() const { return y_min == -y_max; }
  ComplexRectangle shifted(double dx, double dy) const {
    return {x_min + dx, x_max + dx, y_min + dy, y_max + dy};
  }
};

/// Delta'/Delta together with |Delta| / scale, evaluated without forming
/// exp(-s tau) when it would dominate (large negative Re s).
struct LogDerivative {
  Complex value;
  double relative_modulus;
};
LogDerivative log_derivative(const Quasipolynomial& q, Complex s);

struct QuadratureOptions {
  /// Absolute tolerance on each (1/2 pi i) contour integral.
  double tolerance = 1e-11;
  /// Each level doubles the initial number of Gauss-Legendre panels.
  int refinement = 0;
  int max_depth = 40;
};

/// Below this |Delta| / scale anywhere on the sampled contour, the contour is
/// declared too close to a zero.
inline constexpr double kContourClearance = 1e-6;

struct ContourMoments {
  /// mu_p = (1/2 pi i) \oint w^p Delta'/Delta dz with w = (z - center) / radius.
  std::vector<Complex> moments;
  Complex center;
  double radius;
  double min_relative_modulus;
  bool converged;  // every panel met its tolerance before max_depth
};

/// Composite 16-node Gauss-Legendre quadrature of the moments over the
/// rectangle boundary, adaptively halving panels.
ContourMoments contour_moments(const Quasipolynomial& q, const ComplexRectangle& rect,
                               int max_power, const QuadratureOptions& options = {},
                               const Deadline* deadline = nullptr);

/// Unrounded argument-principle integral (1/2 pi i) \oint Delta'/Delta ds.
Complex winding_integral(const Quasipolynomial& q, const ComplexRectangle& rect,
                         const QuadratureOptions& options = {});

/// Number of zeros (with multiplicity) inside rect. Throws
/// Error{ContourTooClose} if the boundary passes too near a zero or the
/// integral refuses to settle on an integer.
int count_roots(const Quasipolynomial& q, const ComplexRectangle& rect,
                const QuadratureOptions& options = {}, const Deadline* deadline = nullptr);

/// Zero count inside the circle |s - center| < radius by the periodic
/// trapezoid rule; nullopt when the count does not settle on an integer.
std::optional<int> circle_count(const Quasipolynomial& q, Complex center, double radius);

}  // namespace delayplace
