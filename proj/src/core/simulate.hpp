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
#include <variant>
#include <vector>

#include "core/parallel.hpp"
#include "core/quasipoly.hpp"

namespace delayplace {

namespace initial {
struct Constant {
  double c;
};
/// sum_k coeffs[k] t^k
struct Polynomial {
  std::vector<double> coeffs;
};
/// A exp(gamma t)
struct Exponential {
  double A;
  double gamma;
};
/// A sin(omega t + phi)
struct Trigonometric {
  double A;
  double omega;
  double phi;
};
}  // namespace initial

using InitialCondition =
    std::variant<initial::Constant, initial::Polynomial, initial::Exponential, initial::Trigonometric>;

/// Throws Error{BadInput} on non-finite parameters or an empty polynomial.
void validate(const InitialCondition& ic);

/// Exact k-th derivative of the initial function at t.
double eval_initial(const InitialCondition& ic, double t, int k);

struct Trajectory {
  std::vector<double> t;  // uniform grid from -tau
  std::vector<double> y;
  double h;
};

inline constexpr double kBlowUpThreshold = 1e300;
inline constexpr int kDefaultStepsPerDelay = 1000;

/// Explicit Euler method of steps on [-tau, T] with h = tau / steps_per_delay
/// so the delay is an exact number of steps. Throws Error{BlowUp} (detail
/// "time") once |y| exceeds kBlowUpThreshold.
Trajectory simulate(const Quasipolynomial& q, const InitialCondition& ic, double T,
                    int steps_per_delay = kDefaultStepsPerDelay, const Deadline* deadline = nullptr);

/// Every j-th sample (always keeping the last) so that at most max_points remain.
Trajectory decimate(const Trajectory& trajectory, std::size_t max_points);

}  // namespace delayplace
