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
#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracles.hpp"

#include "core/contour.hpp"
#include "core/design.hpp"
#include "core/error.hpp"
#include "core/rootfinder.hpp"

using namespace delayplace;

namespace {

const double kOmega2 = 4.0 * std::numbers::pi * std::numbers::pi;

Quasipolynomial oscillator_design() { return solve_control_mid(std::vector<double>{kOmega2, 0.0}, 2, 0, DelayGiven{0.12}).front().quasipolynomial; }

const Quasipolynomial kDouble(1, 0, {-1.0}, {1.0}, 1.0);
const Quasipolynomial kTriple(2, 0, {2.0, -2.0}, {-2.0}, 1.0);
const ComplexRectangle kUnit{-1.0, 1.0, -1.0, 1.0};

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::Internal;
}

/// Zero count from the total change of arg Delta along the boundary, sampled
/// finely enough that consecutive samples differ by less than pi.
int argument_change_count(const Quasipolynomial& q, const ComplexRectangle& r, int per_edge) {
  const std::vector<double> a(q.a().begin(), q.a().end());
  const std::vector<double> b(q.b().begin(), q.b().end());
  const oracle::LComplex corners[5] = {{r.x_min, r.y_min}, {r.x_max, r.y_min}, {r.x_max, r.y_max},
                                       {r.x_min, r.y_max}, {r.x_min, r.y_min}};
  long double total = 0;
  oracle::LComplex prev = oracle::delta(q.n(), q.m(), a, b, q.tau(), corners[0]);
  for (int e = 0; e < 4; ++e) {
    for (int i = 1; i <= per_edge; ++i) {
      const long double t = static_cast<long double>(i) / per_edge;
      const oracle::LComplex z = corners[e] + (corners[e + 1] - corners[e]) * t;
      const oracle::LComplex cur = oracle::delta(q.n(), q.m(), a, b, q.tau(), z);
      total += std::arg(cur / prev);
      prev = cur;
    }
  }
  return static_cast<int>(std::lround(total / (2.0L * std::numbers::pi_v<long double>)));
}

void check_rootset_invariants(const Quasipolynomial& q, const RootSet& rs) {
  int sum = 0;
  for (const auto& r : rs.roots) {
    CHECK(r.multiplicity >= 1);
    CHECK(rs.rectangle.contains(r.location));
    sum += r.multiplicity;
  }
  CHECK(sum == rs.winding_count);
  for (std::size_t i = 1; i < rs.roots.size(); ++i) {
    const auto& l = rs.roots[i - 1].location;
    const auto& r = rs.roots[i].location;
    CHECK((l.real() < r.real() || (l.real() == r.real() && l.imag() < r.imag())));
  }
  if (rs.rectangle.symmetric_about_real_axis()) {
    for (const auto& r : rs.roots) {
      const bool mirrored = std::any_of(rs.roots.begin(), rs.roots.end(), [&](const Root& o) {
        return o.multiplicity == r.multiplicity && std::abs(o.location - std::conj(r.location)) <= 1e-9;
      });
      CHECK(mirrored);
    }
  }
  (void)q;
}

}  // namespace

TEST_CASE("count_roots on constructed multiple roots") {
  CHECK(count_roots(kDouble, kUnit) == 2);
  CHECK(count_roots(kTriple, kUnit) == 3);
  const Complex w2 = winding_integral(kDouble, kUnit);
  CHECK(std::abs(w2 - 2.0) < 1e-3);
  const Complex w3 = winding_integral(kTriple, kUnit);
  CHECK(std::abs(w3 - 3.0) < 1e-3);
}

TEST_CASE("count_roots refuses a contour through a zero") {
  CHECK(code_of([] { count_roots(kDouble, ComplexRectangle{0.0, 1.0, -1.0, 1.0}); }) ==
        ErrorCode::ContourTooClose);
}

TEST_CASE("count on the large oscillator window matches the argument-change oracle") {
  const auto q = oscillator_design();
  const ComplexRectangle big{-500.0, 500.0, -500.0, 500.0};
  const int count = count_roots(q, big);
  CHECK(count == argument_change_count(q, big, 400000));
  // Doubling the panels barely moves the pre-rounding integral.
  QuadratureOptions fine;
  fine.refinement = 1;
  CHECK(std::abs(winding_integral(q, big) - winding_integral(q, big, fine)) < 1e-3);
}

TEST_CASE("circle counts around multiple roots") {
  CHECK(circle_count(kDouble, 0.0, 1e-3) == 2);
  CHECK(circle_count(kTriple, 0.0, 1e-3) == 3);
  CHECK(circle_count(kTriple, 0.5, 1e-3) == 0);
}

TEST_CASE("find_roots: constructed multiple roots") {
  const auto d = find_roots(kDouble, kUnit);
  REQUIRE(d.roots.size() == 1);
  CHECK(d.roots[0].multiplicity == 2);
  CHECK(std::abs(d.roots[0].location) < 1e-8);
  check_rootset_invariants(kDouble, d);

  const auto t = find_roots(kTriple, kUnit);
  REQUIRE(t.roots.size() == 1);
  CHECK(t.roots[0].multiplicity == 3);
  CHECK(std::abs(t.roots[0].location) < 1e-6);
  CHECK(t.winding_count == 3);
  CHECK(t.window_abscissa == t.roots[0].location.real());
}

TEST_CASE("find_roots: CRRID design roots") {
  const auto design = solve_generic_crrid(1, 0, 1.0, std::vector<double>{-1.0, -2.0});
  const auto rs = find_roots(design.quasipolynomial, ComplexRectangle{-2.5, 0.0, -1.0, 1.0});
  REQUIRE(rs.roots.size() == 2);
  CHECK(std::abs(rs.roots[0].location - Complex(-2.0, 0.0)) < 1e-8);
  CHECK(std::abs(rs.roots[1].location - Complex(-1.0, 0.0)) < 1e-8);
  CHECK(rs.roots[0].multiplicity == 1);
  CHECK(rs.roots[1].multiplicity == 1);
  CHECK(certify_dominance(rs, -1.0).dominant);
}

TEST_CASE("find_roots: oscillator design window dominance") {
  const auto q = oscillator_design();
  const double s0 = -2.8592099477959727;
  const auto rs = find_roots(q, ComplexRectangle{-500.0, 500.0, -500.0, 500.0});
  check_rootset_invariants(q, rs);
  for (const auto& r : rs.roots) CHECK(r.location.real() <= s0 + 1e-6);
  const auto report = certify_dominance(rs, s0);
  CHECK(report.dominant);
  CHECK(report.margin > 1.0);
  const auto assigned = std::find_if(rs.roots.begin(), rs.roots.end(),
                                     [&](const Root& r) { return std::abs(r.location - s0) < 1e-6; });
  REQUIRE(assigned != rs.roots.end());
  CHECK(assigned->multiplicity == 2);
  for (const auto& r : rs.roots) CHECK(std::abs(q.evaluate(r.location)) <= 1e-8 * q.scale(r.location));
}

TEST_CASE("find_roots reproduces polynomial roots") {
  std::mt19937 rng(1234);
  std::uniform_real_distribution<double> coef(-4.0, 4.0);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + trial % 7;
    std::vector<double> a(n);
    for (auto& v : a) v = coef(rng);
    const Quasipolynomial q(n, 0, a, {0.0}, 1.0);
    double bound = 0.0;
    for (double v : a) bound = std::max(bound, std::abs(v));
    bound += 1.5;  // Cauchy bound with slack
    const auto rs = find_roots(q, ComplexRectangle{-bound, bound, -bound, bound});
    check_rootset_invariants(q, rs);
    auto ref = oracle::polynomial_roots(a);
    REQUIRE(rs.winding_count == n);
    std::vector<Complex> got;
    for (const auto& r : rs.roots)
      for (int k = 0; k < r.multiplicity; ++k) got.push_back(r.location);
    for (const auto& z : ref) {
      double best = INFINITY;
      for (const auto& g : got) best = std::min(best, std::abs(g - z));
      CHECK(best < 1e-8 * (1.0 + std::abs(z)));
    }
  }
}

TEST_CASE("find_roots on random retarded and neutral quasipolynomials") {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  for (int trial = 0; trial < 24; ++trial) {
    const int n = 1 + trial % 4;
    const bool neutral = trial % 3 == 0;
    const int m = neutral ? n : trial % n;
    std::vector<double> a(n), b(m + 1);
    for (auto& v : a) v = coef(rng);
    for (auto& v : b) v = coef(rng);
    if (neutral) b[m] = 0.6 * (b[m] >= 0 ? 1 : -1);
    const Quasipolynomial q(n, m, a, b, 0.5 + 0.25 * (trial % 4));
    const ComplexRectangle rect{-6.0, 4.0, -25.0, 25.0};
    RootSet rs;
    try {
      rs = find_roots(q, rect);
    } catch (const Error& e) {
      FAIL_CHECK("trial " << trial << ": " << e.what());
      continue;
    }
    check_rootset_invariants(q, rs);
    CHECK(rs.winding_count == count_roots(q, rs.rectangle));
    for (const auto& r : rs.roots) {
      CHECK(std::abs(q.evaluate(r.location)) <= 1e-8 * q.scale(r.location));
    }
  }
}

TEST_CASE("find_roots shifts a window whose edge crosses a root") {
  // s + 1 - exp(-s): simple zero at 0, on the left edge.
  const Quasipolynomial simple(1, 0, {1.0}, {-1.0}, 1.0);
  const auto rs = find_roots(simple, ComplexRectangle{0.0, 1.0, -1.0, 1.0});
  CHECK(rs.rectangle.x_min != 0.0);
  CHECK(rs.rectangle.width() == doctest::Approx(1.0));
  CHECK(rs.winding_count == (rs.rectangle.x_min < 0.0 ? 1 : 0));
  check_rootset_invariants(simple, rs);
  RootFinderOptions strict;
  strict.max_boundary_retries = 0;
  CHECK(code_of([&] { find_roots(simple, ComplexRectangle{0.0, 1.0, -1.0, 1.0}, strict); }) ==
        ErrorCode::RootOnBoundary);
}

TEST_CASE("a double zero on the edge is not cleared by the small shifts") {
  CHECK(code_of([] { find_roots(kDouble, ComplexRectangle{0.0, 1.0, -1.0, 1.0}); }) ==
        ErrorCode::RootOnBoundary);
}

TEST_CASE("find_roots input validation") {
  CHECK(code_of([] { find_roots(kDouble, ComplexRectangle{1.0, -1.0, -1.0, 1.0}); }) == ErrorCode::BadInput);
  CHECK(code_of([] { find_roots(kDouble, ComplexRectangle{-1.0, 1.0, 0.0, 0.0}); }) == ErrorCode::BadInput);
  CHECK(code_of([] { find_roots(kDouble, ComplexRectangle{-INFINITY, 1.0, -1.0, 1.0}); }) ==
        ErrorCode::BadInput);
}

TEST_CASE("find_roots on an empty window") {
  const auto rs = find_roots(kDouble, ComplexRectangle{2.0, 3.0, -1.0, 1.0});
  CHECK(rs.roots.empty());
  CHECK(rs.winding_count == 0);
  CHECK(std::isinf(rs.window_abscissa));
  CHECK(rs.window_abscissa < 0.0);
}

TEST_CASE("find_roots is deterministic and honours the deadline") {
  const auto q = oscillator_design();
  const ComplexRectangle rect{-200.0, 50.0, -200.0, 200.0};
  const auto a = find_roots(q, rect);
  const auto b = find_roots(q, rect);
  REQUIRE(a.roots.size() == b.roots.size());
  for (std::size_t i = 0; i < a.roots.size(); ++i) CHECK(a.roots[i].location == b.roots[i].location);
  const Deadline expired(std::chrono::milliseconds(0));
  CHECK(code_of([&] { find_roots(q, rect, {}, &expired); }) == ErrorCode::DeadlineExceeded);
}

TEST_CASE("newton polish converges from nearby starts") {
  const auto design = solve_generic_crrid(1, 0, 1.0, std::vector<double>{-1.0, -2.0});
  const Complex z = newton_polish(design.quasipolynomial, Complex(-1.1, 0.05));
  CHECK(std::abs(z - Complex(-1.0, 0.0)) < 1e-10);
  const Complex w = newton_polish(kTriple, Complex(0.01, 0.01), 2);
  CHECK(std::abs(w) < 1e-10);
}

TEST_CASE("dominance certification") {
  const auto single = find_roots(kDouble, kUnit);
  const auto report = certify_dominance(single, 0.0);
  CHECK(report.dominant);
  CHECK(std::isinf(report.margin));
  CHECK(report.margin > 0.0);

  RootSet artificial{kUnit, {{{-2.0, 0.0}, 1, 0.0}, {{-1.0, 0.0}, 1, 0.0}}, 2, -1.0};
  artificial.rectangle = {-3.0, 1.0, -1.0, 1.0};
  const auto bad = certify_dominance(artificial, -2.0);
  CHECK_FALSE(bad.dominant);
  CHECK(bad.margin == doctest::Approx(-1.0));

  CHECK(code_of([&] { certify_dominance(artificial, -1.5); }) == ErrorCode::AssignedRootMissing);
}

TEST_CASE("sensitivity sweep around the oscillator double root") {
  const auto q = oscillator_design();
  const ComplexRectangle rect{-6.0, 0.0, -3.0, 3.0};
  const auto sweep = sensitivity_sweep(q, 1e-3, 3, rect);
  REQUIRE(sweep.per_k.size() == 7);
  const auto nominal = find_roots(q, rect);
  const auto& zero = sweep.per_k.at(0);
  REQUIRE(zero.roots.size() == nominal.roots.size());
  for (std::size_t i = 0; i < zero.roots.size(); ++i) {
    CHECK(zero.roots[i].location == nominal.roots[i].location);
    CHECK(zero.roots[i].multiplicity == nominal.roots[i].multiplicity);
    CHECK(zero.roots[i].residual == nominal.roots[i].residual);
  }
  CHECK(zero.winding_count == nominal.winding_count);

  REQUIRE(zero.roots.size() == 1);
  CHECK(zero.roots[0].multiplicity == 2);
  for (int k = -3; k <= 3; ++k) {
    if (k == 0) continue;
    const auto& rs = sweep.per_k.at(k);
    REQUIRE(rs.roots.size() == 2);
    CHECK(rs.roots[0].multiplicity == 1);
    CHECK(rs.roots[1].multiplicity == 1);
    const bool real_pair = rs.roots[0].location.imag() == 0.0 && rs.roots[1].location.imag() == 0.0;
    // Longer delay pushes the pair apart on the real axis, shorter delay makes it complex.
    CHECK(real_pair == (k > 0));
  }
}

TEST_CASE("sensitivity sweep preconditions and delay-free input") {
  const auto q = oscillator_design();
  const ComplexRectangle rect{-6.0, 0.0, -3.0, 3.0};
  CHECK(code_of([&] { sensitivity_sweep(q, 0.12, 1, rect); }) == ErrorCode::InvalidPerturbation);
  CHECK(code_of([&] { sensitivity_sweep(q, 0.0, 1, rect); }) == ErrorCode::InvalidPerturbation);
  CHECK(code_of([&] { sensitivity_sweep(q, 0.01, 0, rect); }) == ErrorCode::InvalidPerturbation);

  const Quasipolynomial poly(3, 0, {6.0, 11.0, 6.0}, {0.0}, 1.0);
  const auto sweep = sensitivity_sweep(poly, 0.1, 2, ComplexRectangle{-4.0, 1.0, -2.0, 2.0});
  REQUIRE(sweep.per_k.size() == 5);
  const auto& ref = sweep.per_k.at(0).roots;
  REQUIRE(ref.size() == 3);
  for (const auto& [k, rs] : sweep.per_k) {
    REQUIRE(rs.roots.size() == ref.size());
    for (std::size_t i = 0; i < ref.size(); ++i) CHECK(std::abs(rs.roots[i].location - ref[i].location) < 1e-9);
  }
}

TEST_CASE("sensitivity displacement is linear for simple roots") {
  const auto q = oscillator_design();
  // The real simple root near -24.5 sits alone in this window. It moves
  // about 0.5 per 1e-3 of delay, so the decades start below 1e-3.
  const ComplexRectangle rect{-30.0, -20.0, -5.0, 5.0};
  std::vector<double> shift;
  for (double eps : {1e-4, 1e-5, 1e-6}) {
    const auto sweep = sensitivity_sweep(q, eps, 1, rect);
    REQUIRE(sweep.per_k.at(0).roots.size() == 1);
    REQUIRE(sweep.per_k.at(1).roots.size() == 1);
    shift.push_back(std::abs(sweep.per_k.at(1).roots[0].location - sweep.per_k.at(0).roots[0].location));
  }
  CHECK(shift[0] / shift[1] == doctest::Approx(10.0).epsilon(0.1));
  CHECK(shift[1] / shift[2] == doctest::Approx(10.0).epsilon(0.1));
}
