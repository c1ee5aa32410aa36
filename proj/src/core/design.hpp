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
#include <span>
#include <variant>
#include <vector>

#include "core/parallel.hpp"
#include "core/quasipoly.hpp"

namespace delayplace {

/// Residual tolerance relative to Quasipolynomial::scale.
inline constexpr double kDesignTolerance = 1e-8;

struct DesignResult {
  Quasipolynomial quasipolynomial;
  /// |Delta^(k)(s_i)| for every imposed condition, in the order imposed.
  std::vector<double> residuals;
  double condition_estimate = 0.0;
  /// tau (root given) or s0 (delay given) in control-oriented mode.
  std::optional<double> solved_parameter;
  /// Assigned real roots: {s0} for MID modes, the CRRID input otherwise.
  std::vector<double> assigned_roots;

  /// True when every residual is within kDesignTolerance of its scale.
  bool within_tolerance() const;
};

/// Places a root of multiplicity n + m + 1 at s0.
DesignResult solve_generic_mid(int n, int m, double tau, double s0);

/// Places the n + m + 1 real roots (sorted non-increasing). Runs of equal
/// values become confluent derivative conditions.
DesignResult solve_generic_crrid(int n, int m, double tau, std::span<const double> roots);

/// b_0..b_m making s0 a root of multiplicity at least m + 1 for fixed a.
std::vector<double> solve_b_given(std::span<const double> a, int n, int m, double s0, double tau);

/// F(s0, tau) = Delta^(m+1)(s0) once b = solve_b_given(...). Zero exactly on
/// the admissibility region.
double admissibility_residual(std::span<const double> a, int n, int m, double s0, double tau);

struct DelayGiven {
  double tau;
};
struct RootGiven {
  double s0;
};
using ControlGiven = std::variant<DelayGiven, RootGiven>;

/// Optional overrides of the scalar search window. Defaults:
/// s0 in [-50/tau, 0] when tau is given, tau in (0, 100/max(1,|s0|)].
struct SearchWindow {
  std::optional<double> s0_min;
  std::optional<double> tau_max;
};

inline constexpr int kControlSearchSamples = 2048;

/// All admissible completions of the control-oriented MID problem, ordered by
/// descending s0 (delay given) or ascending tau (root given). The first entry
/// is the default selection. Throws Error{NoAdmissiblePoint} if none exist.
std::vector<DesignResult> solve_control_mid(std::span<const double> a, int n, int m,
                                            const ControlGiven& given,
                                            const SearchWindow& window = {},
                                            const Deadline* deadline = nullptr);

struct AdmissibilityContour {
  double s0_min;
  double tau_max;
  int s0_samples;
  int tau_samples;
  /// Row-major, s0 varying fastest. NaN marks nodes whose solve failed.
  std::vector<double> grid;
  std::vector<std::vector<std::pair<double, double>>> polylines;

  double s0_at(int i) const;
  double tau_at(int j) const;
};

/// tau used in place of 0 on the bottom grid row.
inline constexpr double kContourTauFloor = 1e-9;

AdmissibilityContour admissibility_contour(std::span<const double> a, int n, int m, double s0_min,
                                           double tau_max, int s0_samples, int tau_samples,
                                           const Deadline* deadline = nullptr);

}  // namespace delayplace
