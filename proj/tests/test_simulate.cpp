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
#include <atomic>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "doctest.h"

#include "core/design.hpp"
#include "core/error.hpp"
#include "core/parallel.hpp"
#include "core/simulate.hpp"

using namespace delayplace;

namespace {

const double kOmega2 = 4.0 * std::numbers::pi * std::numbers::pi;

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::Internal;
}

double at(const Trajectory& tr, double t) {
  const auto i = static_cast<std::size_t>(std::llround((t - tr.t.front()) / tr.h));
  REQUIRE(i < tr.t.size());
  return tr.y[i];
}

double max_error(const Trajectory& tr, auto&& exact) {
  double err = 0.0;
  for (std::size_t i = 0; i < tr.t.size(); ++i) {
    if (tr.t[i] >= 0.0) err = std::max(err, std::abs(tr.y[i] - exact(tr.t[i])));
  }
  return err;
}

}  // namespace

TEST_CASE("initial functions and their derivatives") {
  CHECK(eval_initial(initial::Constant{1.0}, -0.05, 0) == 1.0);
  CHECK(eval_initial(initial::Constant{1.0}, -0.05, 3) == 0.0);
  CHECK(eval_initial(initial::Trigonometric{1.0, 2.0, 0.0}, 0.0, 1) == doctest::Approx(2.0));
  CHECK(eval_initial(initial::Polynomial{{1.0, 2.0, 3.0}}, -1.0, 2) == 6.0);
  CHECK(eval_initial(initial::Polynomial{{1.0, 2.0, 3.0}}, -1.0, 0) == 2.0);
  CHECK(eval_initial(initial::Polynomial{{1.0, 2.0, 3.0}}, -1.0, 3) == 0.0);
  CHECK(eval_initial(initial::Exponential{2.0, -3.0}, -0.5, 2) == doctest::Approx(18.0 * std::exp(1.5)));
  const initial::Trigonometric trig{1.5, 3.0, 0.4};
  for (int k = 0; k < 5; ++k) {
    const double h = 1e-5;
    const double fd = (eval_initial(trig, -0.3 + h, k) - eval_initial(trig, -0.3 - h, k)) / (2 * h);
    CHECK(eval_initial(trig, -0.3, k + 1) == doctest::Approx(fd).epsilon(1e-6));
  }
}

TEST_CASE("initial condition validation") {
  CHECK(code_of([] { validate(initial::Polynomial{{}}); }) == ErrorCode::BadInput);
  CHECK(code_of([] { validate(initial::Constant{NAN}); }) == ErrorCode::BadInput);
  CHECK(code_of([] { validate(initial::Exponential{1.0, INFINITY}); }) == ErrorCode::BadInput);
}

TEST_CASE("simulate: first-order decay") {
  const Quasipolynomial q(1, 0, {1.0}, {0.0}, 1.0);
  const auto tr = simulate(q, initial::Constant{1.0}, 1.0, 1000);
  CHECK(std::abs(at(tr, 1.0) - std::exp(-1.0)) < 1e-3);
  CHECK(tr.t.front() == -1.0);
  CHECK(tr.t.size() == tr.y.size());
  CHECK(tr.t.back() >= 1.0 - tr.h);
  CHECK(tr.h == doctest::Approx(1e-3));
}

TEST_CASE("simulate: initial segment is exact") {
  const Quasipolynomial q(2, 1, {1.0, 0.5}, {0.2, 0.1}, 0.7);
  const initial::Trigonometric ic{0.8, 5.0, 0.3};
  const auto tr = simulate(q, ic, 2.0, 100);
  for (std::size_t i = 0; i < tr.t.size() && tr.t[i] <= 0.0; ++i) {
    CHECK(tr.y[i] == eval_initial(ic, tr.t[i], 0));
  }
}

TEST_CASE("simulate: first-order convergence on pure ODEs") {
  SUBCASE("y' = -y") {
    const Quasipolynomial q(1, 0, {1.0}, {0.0}, 1.0);
    const auto exact = [](double t) { return std::exp(-t); };
    const double e1 = max_error(simulate(q, initial::Constant{1.0}, 1.0, 500), exact);
    const double e2 = max_error(simulate(q, initial::Constant{1.0}, 1.0, 1000), exact);
    CHECK(e1 / e2 == doctest::Approx(2.0).epsilon(0.1));
  }
  SUBCASE("undamped oscillator") {
    const Quasipolynomial q(2, 0, {kOmega2, 0.0}, {0.0}, 1.0);
    const initial::Trigonometric ic{1.0, 2.0 * std::numbers::pi, std::numbers::pi / 2.0};
    const auto exact = [](double t) { return std::cos(2.0 * std::numbers::pi * t); };
    const auto coarse = simulate(q, ic, 1.0, 4000);
    CHECK(std::abs(at(coarse, 1.0) - 1.0) < 2e-2);
    const double e1 = max_error(coarse, exact);
    const double e2 = max_error(simulate(q, ic, 1.0, 8000), exact);
    CHECK(e1 / e2 == doctest::Approx(2.0).epsilon(0.1));
  }
}

TEST_CASE("simulate: method of steps against the closed form") {
  // y' = -y(t - 1), y = 1 on [-1, 0]: y = 1 - t on [0,1], 1 - t + (t-1)^2/2 on [1,2].
  const Quasipolynomial q(1, 0, {0.0}, {1.0}, 1.0);
  const auto exact = [](double t) { return t <= 1.0 ? 1.0 - t : 1.0 - t + 0.5 * (t - 1.0) * (t - 1.0); };
  const double e1 = max_error(simulate(q, initial::Constant{1.0}, 2.0, 500), exact);
  const double e2 = max_error(simulate(q, initial::Constant{1.0}, 2.0, 1000), exact);
  CHECK(e2 < 1e-3);
  CHECK(e1 / e2 == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("simulate: neutral equation reads the stored highest derivative") {
  // y' + y + 0.5 y'(t - 1) = 0 with y = t on [-1, 0]: on [0, 1] y' = -y - 0.5,
  // so y = -0.5 + 0.5 e^{-t}; on [1, 2] y' = -y - 0.5 y'(t-1) = -y + 0.25 e^{-(t-1)}.
  const Quasipolynomial q(1, 1, {1.0}, {0.0, 0.5}, 1.0);
  REQUIRE(q.type() == DelayType::Neutral);
  const auto exact = [](double t) {
    if (t <= 1.0) return -0.5 + 0.5 * std::exp(-t);
    const double y1 = -0.5 + 0.5 * std::exp(-1.0);
    return y1 * std::exp(-(t - 1.0)) + 0.25 * (t - 1.0) * std::exp(-(t - 1.0));
  };
  const double e1 = max_error(simulate(q, initial::Polynomial{{0.0, 1.0}}, 2.0, 1000), exact);
  const double e2 = max_error(simulate(q, initial::Polynomial{{0.0, 1.0}}, 2.0, 2000), exact);
  CHECK(e2 < 1e-3);
  CHECK(e1 / e2 == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("simulate: oscillator design decays at the dominant rate") {
  const auto design = solve_control_mid(std::vector<double>{kOmega2, 0.0}, 2, 0, DelayGiven{0.12}).front();
  const double s0 = design.assigned_roots[0];
  const auto tr = simulate(design.quasipolynomial, initial::Constant{1.0}, 5.0, 1000);
  CHECK(std::abs(at(tr, 5.0)) < std::abs(at(tr, 0.0)));
  // Least-squares slope of log|y| over [2, 5].
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int count = 0;
  for (std::size_t i = 0; i < tr.t.size(); ++i) {
    if (tr.t[i] < 2.0 || tr.t[i] > 5.0) continue;
    const double ly = std::log(std::abs(tr.y[i]));
    sx += tr.t[i];
    sy += ly;
    sxx += tr.t[i] * tr.t[i];
    sxy += tr.t[i] * ly;
    ++count;
  }
  const double rate = (count * sxy - sx * sy) / (count * sxx - sx * sx);
  CHECK(std::abs(rate - s0) <= 0.25 * std::abs(s0));
}

TEST_CASE("simulate: zero dynamics hold the initial value") {
  const Quasipolynomial q(1, 0, {0.0}, {0.0}, 0.5);
  const auto tr = simulate(q, initial::Exponential{2.0, 1.0}, 3.0, 50);
  for (std::size_t i = 0; i < tr.t.size(); ++i) {
    if (tr.t[i] >= 0.0) CHECK(tr.y[i] == 2.0);
  }
}

TEST_CASE("simulate: divergence is reported with its time") {
  const Quasipolynomial q(1, 0, {-50.0}, {0.0}, 1.0);
  try {
    simulate(q, initial::Constant{1.0}, 1000.0, 10);
    FAIL("expected blow-up");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BlowUp);
    REQUIRE(e.details().count("time") == 1);
    CHECK(e.details().at("time") > 0.0);
    CHECK(e.details().at("time") < 1000.0);
  }
}

TEST_CASE("simulate: preconditions") {
  const Quasipolynomial q(1, 0, {1.0}, {0.0}, 1.0);
  CHECK(code_of([&] { simulate(q, initial::Constant{1.0}, 0.0, 100); }) == ErrorCode::BadInput);
  CHECK(code_of([&] { simulate(q, initial::Constant{1.0}, -1.0, 100); }) == ErrorCode::BadInput);
  CHECK(code_of([&] { simulate(q, initial::Constant{1.0}, 1.0, 9); }) == ErrorCode::BadInput);
  const Quasipolynomial zero_order(0, 0, {}, {1.0}, 1.0);
  CHECK(code_of([&] { simulate(zero_order, initial::Constant{1.0}, 1.0, 100); }) == ErrorCode::BadInput);
}

TEST_CASE("decimation keeps the endpoints") {
  const Quasipolynomial q(1, 0, {1.0}, {0.0}, 1.0);
  const auto tr = simulate(q, initial::Constant{1.0}, 100.0, 1000);
  REQUIRE(tr.t.size() > 100000);
  const auto small = decimate(tr, 1000);
  CHECK(small.t.size() <= 1000);
  CHECK(small.t.front() == tr.t.front());
  CHECK(small.t.back() == tr.t.back());
  CHECK(small.y.back() == tr.y.back());
  CHECK(decimate(tr, tr.t.size()).t.size() == tr.t.size());
}

TEST_CASE("parallel_for covers every index and rethrows") {
  std::vector<std::atomic<int>> hits(1000);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i]++; });
  for (auto& h : hits) CHECK(h.load() == 1);
  CHECK_THROWS_AS(parallel_for(100, [](std::size_t i) {
                    if (i == 37) throw std::runtime_error("boom");
                  }),
                  std::runtime_error);
  parallel_for(0, [](std::size_t) { FAIL("not called"); });
}

TEST_CASE("thread budget") {
  const unsigned before = thread_budget();
  set_thread_budget(3);
  CHECK(thread_budget() == 3);
  set_thread_budget(0);
  CHECK(thread_budget() >= 1);
  set_thread_budget(before);
}

TEST_CASE("deadline reports progress") {
  const Deadline open;
  CHECK_FALSE(open.expired());
  open.check();
  const Deadline expired(std::chrono::milliseconds(0));
  expired.set_total(10);
  expired.advance(4);
  CHECK(expired.expired());
  try {
    expired.check();
    FAIL("expected expiry");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DeadlineExceeded);
    CHECK(e.details().at("completed") == 4.0);
    CHECK(e.details().at("total") == 10.0);
  }
}
