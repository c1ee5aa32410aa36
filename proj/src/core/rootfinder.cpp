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
#include "core/rootfinder.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>

#include "core/error.hpp"

namespace delayplace {

namespace {

constexpr double kNewtonResidual = 1e-12;
constexpr double kNewtonStep = 1e-14;
constexpr int kNewtonIterations = 100;
constexpr double kMicroRadius = 1e-4;
constexpr double kDominanceGap = 1e-9;
constexpr double kAssignedRootMatch = 1e-6;
constexpr double kConjugateMatch = 1e-6;

double micro_radius(Complex z) { return kMicroRadius * (1.0 + std::abs(z)); }

// Aberth-Ehrlich iteration for the monic polynomial sum_k c[k] w^k (c[N] = 1).
std::vector<Complex> polynomial_roots(const std::vector<Complex>& c) {
  const int degree = static_cast<int>(c.size()) - 1;
  if (degree <= 0) return {};
  if (degree == 1) return {-c[0]};
  double bound = 0.0;
  for (int k = 0; k < degree; ++k) bound = std::max(bound, std::abs(c[k]));
  const double start_radius = 0.5 * (1.0 + bound);
  std::vector<Complex> z(degree);
  for (int j = 0; j < degree; ++j) {
    z[j] = std::polar(start_radius, 2.0 * std::numbers::pi * j / degree + 0.4);
  }
  for (int iter = 0; iter < 500; ++iter) {
    double largest = 0.0;
    for (int j = 0; j < degree; ++j) {
      Complex p = c[degree], dp = 0.0;
      for (int k = degree - 1; k >= 0; --k) {
        dp = dp * z[j] + p;
        p = p * z[j] + c[k];
      }
      if (p == 0.0) continue;
      const Complex ratio = p / dp;
      Complex repulsion = 0.0;
      for (int l = 0; l < degree; ++l) {
        if (l != j) repulsion += 1.0 / (z[j] - z[l]);
      }
      const Complex offset = ratio / (1.0 - ratio * repulsion);
      if (!std::isfinite(offset.real()) || !std::isfinite(offset.imag())) continue;
      z[j] -= offset;
      largest = std::max(largest, std::abs(offset) / (1.0 + std::abs(z[j])));
    }
    if (largest < 1e-15) break;
  }
  return z;
}

// Monic polynomial whose roots have power sums mu_1..mu_N (Newton identities).
std::vector<Complex> polynomial_from_power_sums(const std::vector<Complex>& mu, int count) {
  std::vector<Complex> e(count + 1, 0.0);
  e[0] = 1.0;
  for (int k = 1; k <= count; ++k) {
    Complex acc = 0.0;
    for (int i = 1; i <= k; ++i) {
      const double sign = (i % 2 == 1) ? 1.0 : -1.0;
      acc += sign * e[k - i] * mu[i];
    }
    e[k] = acc / static_cast<double>(k);
  }
  std::vector<Complex> coeffs(count + 1);
  for (int k = 0; k <= count; ++k) coeffs[count - k] = ((k % 2 == 0) ? 1.0 : -1.0) * e[k];
  return coeffs;
}

double merit(const Quasipolynomial& q, Complex z, int order) {
  if (order == 0) return log_derivative(q, z).relative_modulus;
  return std::abs(q.derivative(z, order)) / q.scale(z);
}

Complex newton_step(const Quasipolynomial& q, Complex z, int order) {
  if (order == 0) return 1.0 / log_derivative(q, z).value;
  return q.derivative(z, order) / q.derivative(z, order + 1);
}

struct Probe {
  Complex location;
  int count;
  double radius;
};

// Smallest clean positive micro-contour count at radii 1x, 10x, 100x the base.
std::optional<Probe> probe_multiplicity(const Quasipolynomial& q, Complex z) {
  const double base = micro_radius(z);
  for (double factor : {1.0, 10.0, 100.0}) {
    const auto c = circle_count(q, z, base * factor);
    if (c && *c > 0) return Probe{z, *c, base * factor};
  }
  return std::nullopt;
}

class Finder {
 public:
  Finder(const Quasipolynomial& q, const RootFinderOptions& options, const Deadline* deadline)
      : q_(q), options_(options), deadline_(deadline) {}

  std::optional<int> try_count(const ComplexRectangle& r) const {
    try {
      return count_roots(q_, r, options_.quadrature, deadline_);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::ContourTooClose) return std::nullopt;
      throw;
    }
  }

  std::vector<Root> process(const ComplexRectangle& region, int count, bool resplit) const {
    check_deadline(deadline_);
    if (count == 0) return {};
    const double size = std::max(region.width(), region.height());
    const bool tiny = size < 1e-3 * (1.0 + std::abs(region.center()));
    if (count <= options_.terminal_capacity || tiny) {
      if (auto roots = extract(region, count)) return *roots;
      if (resplit || tiny) {
        std::ostringstream msg;
        msg << "root refinement stalled in region [" << region.x_min << ", " << region.x_max
            << "] x [" << region.y_min << ", " << region.y_max << "]";
        throw Error(ErrorCode::ConvergenceFailure, msg.str());
      }
      return split(region, count, true);
    }
    return split(region, count, false);
  }

 private:
  std::vector<Root> split(const ComplexRectangle& region, int count, bool resplit) const {
    // Off-centre cuts keep split lines away from the real axis and other
    // symmetry lines where zeros tend to sit.
    static constexpr std::array<double, 6> kFractions = {0.5123, 0.4766, 0.5456, 0.4211, 0.6, 0.37};
    const bool vertical_cut = region.width() >= region.height();
    for (double f : kFractions) {
      ComplexRectangle lo = region, hi = region;
      if (vertical_cut) {
        lo.x_max = hi.x_min = region.x_min + f * region.width();
      } else {
        lo.y_max = hi.y_min = region.y_min + f * region.height();
      }
      const auto n_lo = try_count(lo);
      if (!n_lo) continue;
      const auto n_hi = try_count(hi);
      if (!n_hi || *n_lo + *n_hi != count) continue;
      auto roots = process(lo, *n_lo, resplit);
      auto more = process(hi, *n_hi, resplit);
      roots.insert(roots.end(), more.begin(), more.end());
      return roots;
    }
    throw Error(ErrorCode::ConvergenceFailure, "could not subdivide region without crossing a zero");
  }

  std::optional<std::vector<Root>> extract(const ComplexRectangle& region, int count) const {
    QuadratureOptions tight = options_.quadrature;
    tight.tolerance = std::min(tight.tolerance, 1e-12);
    const auto m = contour_moments(q_, region, count, tight, deadline_);
    if (std::abs(m.moments[0] - static_cast<double>(count)) > 1e-2) return std::nullopt;

    const auto coeffs = polynomial_from_power_sums(m.moments, count);
    std::vector<Complex> candidates;
    for (const Complex w : polynomial_roots(coeffs)) candidates.push_back(m.center + m.radius * w);

    std::vector<char> used(candidates.size(), 0);
    std::vector<Root> roots;
    int total = 0;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (used[i]) continue;
      Complex z = candidates[i];
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return std::nullopt;
      auto first = circle_count(q_, z, micro_radius(z));
      if (!first || *first == 0) z = newton_polish(q_, z, 0);
      const auto probe = probe_multiplicity(q_, z);
      if (!probe) return std::nullopt;
      const int multiplicity = probe->count;

      if (multiplicity == 1) {
        used[i] = 1;
        z = newton_polish(q_, z, 0);
      } else {
        // Merge the `multiplicity` unused candidates nearest to the probe.
        std::vector<std::pair<double, std::size_t>> near;
        for (std::size_t j = 0; j < candidates.size(); ++j) {
          if (!used[j]) near.emplace_back(std::abs(candidates[j] - z), j);
        }
        if (static_cast<int>(near.size()) < multiplicity) return std::nullopt;
        std::partial_sort(near.begin(), near.begin() + multiplicity, near.end());
        if (near[multiplicity - 1].first > 3.0 * probe->radius) return std::nullopt;
        Complex centroid = 0.0;
        for (int k = 0; k < multiplicity; ++k) {
          used[near[k].second] = 1;
          centroid += candidates[near[k].second];
        }
        centroid /= static_cast<double>(multiplicity);
        z = newton_polish(q_, centroid, multiplicity - 1);
      }

      // Real coefficients: a zero within rounding of the real axis is real.
      if (z.imag() != 0.0 && std::abs(z.imag()) < 1e-8 * (1.0 + std::abs(z))) {
        const Complex real_start(z.real(), 0.0);
        const Complex zr = newton_polish(q_, real_start, multiplicity - 1);
        if (zr.imag() == 0.0 && std::abs(zr - z) < 1e-6 * (1.0 + std::abs(z))) z = zr;
      }

      const auto check = probe_multiplicity(q_, z);
      if (!check || check->count != multiplicity || !region.contains(z)) return std::nullopt;
      roots.push_back({z, multiplicity, std::abs(q_.evaluate(z))});
      total += multiplicity;
    }
    if (total != count) return std::nullopt;
    for (std::size_t i = 0; i < roots.size(); ++i) {
      for (std::size_t j = i + 1; j < roots.size(); ++j) {
        if (std::abs(roots[i].location - roots[j].location) < 2.0 * micro_radius(roots[i].location)) {
          return std::nullopt;
        }
      }
    }
    return roots;
  }

  const Quasipolynomial& q_;
  const RootFinderOptions& options_;
  const Deadline* deadline_;
};

// Vertical strips no wider than 20 / tau; internal cuts are nudged off zeros.
std::vector<std::pair<ComplexRectangle, int>> make_strips(const Finder& finder,
                                                          const ComplexRectangle& rect, double tau,
                                                          int total) {
  const int strips = std::max(1, static_cast<int>(std::ceil(rect.width() * tau / 20.0)));
  if (strips == 1) return {{rect, total}};
  const double width = rect.width() / strips;
  static constexpr std::array<double, 7> kNudges = {0.0, 0.0123, -0.0234, 0.0345, -0.0456, 0.0567, -0.0789};
  std::vector<std::pair<ComplexRectangle, int>> out;
  double left = rect.x_min;
  int assigned = 0;
  for (int k = 1; k < strips; ++k) {
    bool placed = false;
    for (double nudge : kNudges) {
      const double cut = rect.x_min + (k + nudge) * width;
      const ComplexRectangle strip{left, cut, rect.y_min, rect.y_max};
      if (const auto c = finder.try_count(strip)) {
        out.emplace_back(strip, *c);
        assigned += *c;
        left = cut;
        placed = true;
        break;
      }
    }
    if (!placed) throw Error(ErrorCode::ConvergenceFailure, "could not place a strip boundary");
  }
  const ComplexRectangle last{left, rect.x_max, rect.y_min, rect.y_max};
  const auto c = finder.try_count(last);
  if (!c || assigned + *c != total) {
    throw Error(ErrorCode::ConvergenceFailure, "strip counts disagree with the window count");
  }
  out.emplace_back(last, *c);
  return out;
}

}  // namespace

Complex newton_polish(const Quasipolynomial& q, Complex start, int order) {
  Complex z = start;
  double f = merit(q, z, order);
  for (int iter = 0; iter < kNewtonIterations; ++iter) {
    if (!(f >= kNewtonResidual)) break;
    const Complex step = newton_step(q, z, order);
    if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
    double t = 1.0;
    bool moved = false;
    for (int halving = 0; halving < 30; ++halving, t *= 0.5) {
      const Complex candidate = z - t * step;
      const double fc = merit(q, candidate, order);
      if (fc < f) {
        z = candidate;
        f = fc;
        moved = true;
        break;
      }
    }
    if (!moved || std::abs(t * step) < kNewtonStep * (1.0 + std::abs(z))) break;
  }
  return z;
}

RootSet find_roots(const Quasipolynomial& q, const ComplexRectangle& rect,
                   const RootFinderOptions& options, const Deadline* deadline) {
  rect.validate();
  if (options.terminal_capacity < 1) throw_bad_input("terminal capacity must be positive");
  Finder finder(q, options, deadline);

  // Shift (never shrink) the window until its boundary clears every zero.
  static constexpr std::array<std::pair<double, double>, 9> kShifts = {
      std::pair{0.0, 0.0}, {1.0, 0.0}, {-1.0, 0.0}, {2.0, 0.0}, {-2.0, 0.0},
      {0.0, 1.0},          {0.0, -1.0}, {3.0, 0.0}, {-3.0, 0.0}};
  const double step = 1e-4 * rect.diagonal();
  std::optional<ComplexRectangle> window;
  int total = 0;
  const int attempts = std::min<int>(options.max_boundary_retries, kShifts.size() - 1);
  for (int attempt = 0; attempt <= attempts; ++attempt) {
    const auto candidate = rect.shifted(kShifts[attempt].first * step, kShifts[attempt].second * step);
    if (const auto c = finder.try_count(candidate)) {
      window = candidate;
      total = *c;
      break;
    }
  }
  if (!window) {
    throw Error(ErrorCode::RootOnBoundary,
                "a zero lies on the rectangle boundary; shifting the window did not clear it");
  }
  const auto strips = make_strips(finder, *window, q.tau(), total);
  std::vector<std::vector<Root>> found(strips.size());
  parallel_for(strips.size(), [&](std::size_t k) {
    found[k] = finder.process(strips[k].first, strips[k].second, false);
  });

  RootSet out{*window, {}, total, -std::numeric_limits<double>::infinity()};
  int multiplicity_sum = 0;
  for (auto& part : found) {
    for (auto& r : part) {
      multiplicity_sum += r.multiplicity;
      out.roots.push_back(r);
    }
  }
  if (multiplicity_sum != total) {
    throw Error(ErrorCode::ConvergenceFailure, "extracted multiplicities disagree with winding count");
  }
  // Real coefficients: make matched conjugate pairs exact mirror images.
  std::vector<bool> paired(out.roots.size(), false);
  for (std::size_t i = 0; i < out.roots.size(); ++i) {
    Root& upper = out.roots[i];
    if (paired[i] || !(upper.location.imag() > 0.0)) continue;
    for (std::size_t j = 0; j < out.roots.size(); ++j) {
      Root& lower = out.roots[j];
      if (paired[j] || j == i || lower.multiplicity != upper.multiplicity) continue;
      if (std::abs(lower.location - std::conj(upper.location)) > kConjugateMatch * (1.0 + std::abs(upper.location))) {
        continue;
      }
      const Complex mean(0.5 * (upper.location.real() + lower.location.real()),
                         0.5 * (upper.location.imag() - lower.location.imag()));
      upper.location = mean;
      lower.location = std::conj(mean);
      paired[i] = paired[j] = true;
      break;
    }
  }
  std::sort(out.roots.begin(), out.roots.end(), [](const Root& l, const Root& r) {
    if (l.location.real() != r.location.real()) return l.location.real() < r.location.real();
    return l.location.imag() < r.location.imag();
  });
  for (const auto& r : out.roots) out.window_abscissa = std::max(out.window_abscissa, r.location.real());
  return out;
}

DominanceReport certify_dominance(const RootSet& roots, double s0) {
  std::optional<std::size_t> assigned;
  double best = kAssignedRootMatch;
  for (std::size_t i = 0; i < roots.roots.size(); ++i) {
    const double d = std::abs(roots.roots[i].location - Complex(s0, 0.0));
    if (d <= best) {
      best = d;
      assigned = i;
    }
  }
  if (!assigned) {
    throw Error(ErrorCode::AssignedRootMissing, "no computed root matches the assigned root s0");
  }
  double rightmost_other = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < roots.roots.size(); ++i) {
    if (i != *assigned) rightmost_other = std::max(rightmost_other, roots.roots[i].location.real());
  }
  return {rightmost_other <= s0 - kDominanceGap, s0 - rightmost_other};
}

SensitivitySweep sensitivity_sweep(const Quasipolynomial& q, double epsilon, int K,
                                   const ComplexRectangle& rect, const RootFinderOptions& options,
                                   const Deadline* deadline) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon) || K < 1) {
    throw Error(ErrorCode::InvalidPerturbation, "sensitivity needs epsilon > 0 and K >= 1");
  }
  if (!(q.tau() - K * epsilon > 0.0)) {
    throw Error(ErrorCode::InvalidPerturbation, "perturbed delay tau - K epsilon must stay positive",
                {{"tau", q.tau()}, {"epsilon", epsilon}, {"K", static_cast<double>(K)}});
  }
  rect.validate();
  const std::size_t count = static_cast<std::size_t>(2 * K + 1);
  std::vector<std::optional<RootSet>> sets(count);
  if (deadline) deadline->set_total(count);
  parallel_for(count, [&](std::size_t idx) {
    const int k = static_cast<int>(idx) - K;
    const Quasipolynomial perturbed = (k == 0) ? q : q.with_delay(q.tau() + k * epsilon);
    sets[idx] = find_roots(perturbed, rect, options, deadline);
    if (deadline) deadline->advance();
  });
  SensitivitySweep out{epsilon, K, {}};
  for (std::size_t idx = 0; idx < count; ++idx) {
    out.per_k.emplace(static_cast<int>(idx) - K, std::move(*sets[idx]));
  }
  return out;
}

}  // namespace delayplace
