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

#include <map>
#include <vector>

#include "core/contour.hpp"
#include "core/parallel.hpp"
#include "core/quasipoly.hpp"

namespace delayplace {

struct Root {
  Complex location;
  int multiplicity;
  double residual;  // |Delta(location)|
};

struct RootSet {
  /// The rectangle actually searched (shifted from the request when its
  /// boundary passed through a zero).
  ComplexRectangle rectangle;
  /// Sorted by real part, then imaginary part.
  std::vector<Root> roots;
  int winding_count = 0;
  /// Largest real part over the roots, -infinity when empty.
  double window_abscissa;
};

struct RootFinderOptions {
  int terminal_capacity = 4;
  QuadratureOptions quadrature{};
  /// Boundary shifts tried before giving up with RootOnBoundary.
  int max_boundary_retries = 8;
};

/// All zeros inside rect by recursive bisection on the argument principle,
/// contour-moment extraction in terminal regions and Newton polishing.
RootSet find_roots(const Quasipolynomial& q, const ComplexRectangle& rect,
                   const RootFinderOptions& options = {}, const Deadline* deadline = nullptr);

/// Polishes `start` towards a zero of Delta^(order) by damped Newton. Stops
/// when |Delta^(order)| < 1e-12 scale, the step falls below 1e-14 (1 + |s|),
/// or after 100 iterations.
Complex newton_polish(const Quasipolynomial& q, Complex start, int order = 0);

struct DominanceReport {
  bool dominant;
  /// s0 minus the largest real part of every other root; +infinity when the
  /// window holds no other root.
  double margin;
};

/// Window-limited dominance check of the root matching s0 (within 1e-6).
/// Throws Error{AssignedRootMissing} when no root matches.
DominanceReport certify_dominance(const RootSet& roots, double s0);

struct SensitivitySweep {
  double epsilon;
  int K;
  /// Roots at delay tau + k epsilon for k = -K..K.
  std::map<int, RootSet> per_k;
};

/// Throws Error{InvalidPerturbation} unless epsilon > 0, K >= 1 and
/// tau - K epsilon > 0.
SensitivitySweep sensitivity_sweep(const Quasipolynomial& q, double epsilon, int K,
                                   const ComplexRectangle& rect,
                                   const RootFinderOptions& options = {},
                                   const Deadline* deadline = nullptr);

}  // namespace delayplace
