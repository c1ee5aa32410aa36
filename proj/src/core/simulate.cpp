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
#include "core/simulate.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "core/error.hpp"

namespace delayplace {

namespace {

constexpr std::size_t kMaxSamples = 50'000'000;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw_bad_input(std::string("initial condition parameter ") + what + " must be finite");
}

}  // namespace

void validate(const InitialCondition& ic) {
  std::visit(Overloaded{
                 [](const initial::Constant& c) { require_finite(c.c, "c"); },
                 [](const initial::Polynomial& p) {
                   if (p.coeffs.empty()) throw_bad_input("polynomial initial condition needs coefficients");
                   for (double v : p.coeffs) require_finite(v, "c_k");
                 },
                 [](const initial::Exponential& e) {
                   require_finite(e.A, "A");
                   require_finite(e.gamma, "gamma");
                 },
                 [](const initial::Trigonometric& s) {
                   require_finite(s.A, "A");
                   require_finite(s.omega, "omega");
                   require_finite(s.phi, "phi");
                 },
             },
             ic);
}

double eval_initial(const InitialCondition& ic, double t, int k) {
  return std::visit(
      Overloaded{
          [&](const initial::Constant& c) { return k == 0 ? c.c : 0.0; },
          [&](const initial::Polynomial& p) {
            const int degree = static_cast<int>(p.coeffs.size()) - 1;
            double acc = 0.0;
            for (int i = degree; i >= k; --i) acc = acc * t + p.coeffs[i] * falling_factorial(i, k);
            return acc;
          },
          [&](const initial::Exponential& e) {
            return e.A * std::pow(e.gamma, k) * std::exp(e.gamma * t);
          },
          [&](const initial::Trigonometric& s) {
            return s.A * std::pow(s.omega, k) *
                   std::sin(s.omega * t + s.phi + k * std::numbers::pi / 2.0);
          },
      },
      ic);
}

Trajectory simulate(const Quasipolynomial& q, const InitialCondition& ic, double T,
                    int steps_per_delay, const Deadline* deadline) {
  validate(ic);
  const int n = q.n();
  const int m = q.m();
  if (n < 1) throw_bad_input("simulation needs n >= 1");
  if (!(T > 0.0) || !std::isfinite(T)) throw_bad_input("final time T must be positive");
  if (steps_per_delay < 10) throw_bad_input("steps_per_delay must be at least 10");

  const double tau = q.tau();
  const std::size_t N = static_cast<std::size_t>(steps_per_delay);
  const double h = tau / steps_per_delay;
  const std::size_t steps = static_cast<std::size_t>(std::ceil(T / h - 1e-9));
  const std::size_t samples = N + 1 + steps;
  if (samples > kMaxSamples || samples * static_cast<std::size_t>(n) > kMaxSamples) {
    throw_bad_input("simulation too long for the chosen step; lower T or steps_per_delay");
  }

  Trajectory out;
  out.h = h;
  out.t.resize(samples);
  out.y.resize(samples);
  for (std::size_t j = 0; j < samples; ++j) out.t[j] = -tau + static_cast<double>(j) * h;
  for (std::size_t j = 0; j <= N; ++j) out.y[j] = eval_initial(ic, out.t[j], 0);

  // state[(j - N) * n + k] = y^(k)(t_j) for t_j >= 0; highest[j - N] = y^(n)(t_j).
  std::vector<double> state((steps + 1) * n);
  std::vector<double> highest(m == n ? steps + 1 : 0);
  for (int k = 0; k < n; ++k) state[k] = eval_initial(ic, 0.0, k);

  const auto a = q.a();
  const auto b = q.b();
  auto delayed = [&](std::size_t i, int k) {
    // y^(k)(t_i), i indexing the full grid
    if (i <= N) return eval_initial(ic, out.t[i], k);
    const std::size_t r = i - N;
    return k < n ? state[r * n + k] : highest[r];
  };

  for (std::size_t s = 0; s < steps; ++s) {
    if (deadline != nullptr && s % 4096 == 0) deadline->check();
    const std::size_t j = N + s;  // current grid index, t_j >= 0
    const double* x = &state[s * n];
    double acc = 0.0;
    for (int k = 0; k < n; ++k) acc -= a[k] * x[k];
    for (int k = 0; k <= m; ++k) acc -= b[k] * delayed(j - N, k);
    if (m == n) highest[s] = acc;

    double* next = &state[(s + 1) * n];
    for (int k = 0; k + 1 < n; ++k) next[k] = x[k] + h * x[k + 1];
    next[n - 1] = x[n - 1] + h * acc;

    out.y[j + 1] = next[0];
    if (!(std::abs(next[0]) <= kBlowUpThreshold)) {
      std::ostringstream msg;
      msg << "solution diverged at t = " << out.t[j + 1];
      throw Error(ErrorCode::BlowUp, msg.str(), {{"time", out.t[j + 1]}});
    }
  }
  return out;
}

Trajectory decimate(const Trajectory& trajectory, std::size_t max_points) {
  const std::size_t size = trajectory.t.size();
  if (max_points < 2 || size <= max_points) return trajectory;
  const std::size_t stride = (size - 1 + (max_points - 2)) / (max_points - 1);
  Trajectory out;
  out.h = trajectory.h;
  for (std::size_t i = 0; i < size; i += stride) {
    out.t.push_back(trajectory.t[i]);
    out.y.push_back(trajectory.y[i]);
  }
  if (out.t.back() != trajectory.t.back()) {
    out.t.push_back(trajectory.t.back());
    out.y.push_back(trajectory.y.back());
  }
  return out;
}

}  // namespace delayplace
