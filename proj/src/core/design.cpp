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
#include "core/design.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <cmath>
#include <limits>
#include <string>

#include "core/error.hpp"
#include "core/linalg.hpp"

namespace delayplace {

namespace {

struct Condition {
  double s;
  int order;
};

void check_degrees(int n, int m) {
  if (m < 0 || n < m) throw_bad_input("degrees must satisfy n >= m >= 0");
  if (n == 0) throw_bad_input("n = m = 0 leaves nothing to assign");
  if (n + m + 1 > kMaxDerivativeOrder) throw_bad_input("degrees too large");
}

void check_tau(double tau) {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw_bad_input("delay tau must be positive and finite");
}

void check_finite(double x, const char* what) {
  if (!std::isfinite(x)) throw_bad_input(std::string(what) + " must be finite");
}

// Fills one row of the full (a, b) system for Delta^(k)(s) = 0; the known
// monic s^n term goes to the right-hand side.
void fill_full_row(DenseMatrix& mat, std::vector<double>& rhs, std::size_t row, int n, int m,
                   double tau, const Condition& cond) {
  const double delay_factor = std::exp(-cond.s * tau);
  for (int i = 0; i < n; ++i) mat(row, i) = monomial_derivative(i, cond.order, cond.s);
  for (int j = 0; j <= m; ++j) {
    mat(row, n + j) = delay_factor * delayed_monomial_derivative(j, cond.order, cond.s, tau);
  }
  rhs[row] = -monomial_derivative(n, cond.order, cond.s);
}

DesignResult finish(Quasipolynomial q, const std::vector<Condition>& conditions, double condition,
                    std::vector<double> assigned) {
  DesignResult result{std::move(q), {}, condition, std::nullopt, std::move(assigned)};
  result.residuals.reserve(conditions.size());
  for (const auto& c : conditions) {
    result.residuals.push_back(std::abs(result.quasipolynomial.derivative(c.s, c.order)));
  }
  return result;
}

DesignResult solve_full_system(int n, int m, double tau, const std::vector<Condition>& conditions,
                               std::vector<double> assigned) {
  const std::size_t size = static_cast<std::size_t>(n + m + 1);
  DenseMatrix mat(size);
  std::vector<double> rhs(size);
  for (std::size_t r = 0; r < size; ++r) fill_full_row(mat, rhs, r, n, m, tau, conditions[r]);
  auto solution = solve_dense(std::move(mat), std::move(rhs));
  std::vector<double> a(solution.x.begin(), solution.x.begin() + n);
  std::vector<double> b(solution.x.begin() + n, solution.x.end());
  return finish(Quasipolynomial(n, m, std::move(a), std::move(b), tau), conditions,
                solution.condition_estimate, std::move(assigned));
}

void check_b_given_inputs(std::span<const double> a, int n, int m, double s0, double tau) {
  if (m < 0 || n < m) throw_bad_input("degrees must satisfy n >= m >= 0");
  if (n < 1) throw_bad_input("n must be at least 1");
  if (static_cast<int>(a.size()) != n) {
    throw_bad_input("expected " + std::to_string(n) + " coefficients a_0..a_{n-1}");
  }
  for (double v : a) check_finite(v, "a");
  check_finite(s0, "s0");
  check_tau(tau);
}

LinearSolution solve_b_system(std::span<const double> a, int n, int m, double s0, double tau) {
  const std::size_t size = static_cast<std::size_t>(m + 1);
  DenseMatrix mat(size);
  std::vector<double> rhs(size);
  const double delay_factor = std::exp(-s0 * tau);
  for (int k = 0; k <= m; ++k) {
    for (int j = 0; j <= m; ++j) {
      mat(k, j) = delay_factor * delayed_monomial_derivative(j, k, s0, tau);
    }
    double p = monomial_derivative(n, k, s0);
    for (int i = 0; i < n; ++i) p += a[i] * monomial_derivative(i, k, s0);
    rhs[k] = -p;
  }
  return solve_dense(std::move(mat), std::move(rhs));
}

// F at (s0, tau) or NaN when the b-system cannot be solved there.
double residual_or_nan(std::span<const double> a, int n, int m, double s0, double tau) {
  try {
    return admissibility_residual(a, n, m, s0, tau);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::SingularSystem) return std::numeric_limits<double>::quiet_NaN();
    throw;
  }
}

// Sign-change brackets of f over the samples, refined by bisection.
template <typename F>
std::vector<double> scalar_roots(const std::vector<double>& xs, F&& f, const Deadline* deadline) {
  std::vector<double> values(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i % 64 == 0) check_deadline(deadline);
    values[i] = f(xs[i]);
  }
  std::vector<double> roots;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (values[i] == 0.0) {
      roots.push_back(xs[i]);
      continue;
    }
    if (i + 1 == xs.size()) break;
    const double fa = values[i];
    const double fb = values[i + 1];
    if (!std::isfinite(fa) || !std::isfinite(fb) || fb == 0.0 || (fa > 0.0) == (fb > 0.0)) continue;
    double lo = xs[i];
    double hi = xs[i + 1];
    double flo = fa;
    while (std::abs(hi - lo) > 1e-12) {
      const double mid = 0.5 * (lo + hi);
      if (mid == lo || mid == hi) break;
      const double fm = f(mid);
      if (!std::isfinite(fm)) break;
      if (fm == 0.0) {
        lo = hi = mid;
        break;
      }
      if ((fm > 0.0) == (flo > 0.0)) {
        lo = mid;
        flo = fm;
      } else {
        hi = mid;
      }
    }
    roots.push_back(0.5 * (lo + hi));
  }
  return roots;
}

}  // namespace

bool DesignResult::within_tolerance() const {
  const auto& q = quasipolynomial;
  // Residuals are stored in imposition order; every assigned root is real, so
  // the largest scale over the assigned roots bounds each one.
  double reference = 0.0;
  for (double s : assigned_roots) reference = std::max(reference, q.scale(s));
  if (reference == 0.0) reference = 1.0;
  return std::all_of(residuals.begin(), residuals.end(),
                     [&](double r) { return r <= kDesignTolerance * reference; });
}

DesignResult solve_generic_mid(int n, int m, double tau, double s0) {
  check_degrees(n, m);
  check_tau(tau);
  check_finite(s0, "s0");
  std::vector<Condition> conditions;
  for (int k = 0; k <= n + m; ++k) conditions.push_back({s0, k});
  return solve_full_system(n, m, tau, conditions, {s0});
}

DesignResult solve_generic_crrid(int n, int m, double tau, std::span<const double> roots) {
  check_degrees(n, m);
  check_tau(tau);
  if (static_cast<int>(roots.size()) != n + m + 1) {
    throw_bad_input("expected " + std::to_string(n + m + 1) + " roots, got " +
                    std::to_string(roots.size()));
  }
  for (double r : roots) check_finite(r, "root");
  if (!std::is_sorted(roots.begin(), roots.end(), std::greater<>())) {
    throw_bad_input("roots must be sorted non-increasing");
  }
  std::vector<Condition> conditions;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    const int order = (i > 0 && roots[i] == roots[i - 1]) ? conditions.back().order + 1 : 0;
    conditions.push_back({roots[i], order});
  }
  return solve_full_system(n, m, tau, conditions, {roots.begin(), roots.end()});
}

std::vector<double> solve_b_given(std::span<const double> a, int n, int m, double s0, double tau) {
  check_b_given_inputs(a, n, m, s0, tau);
  return solve_b_system(a, n, m, s0, tau).x;
}

double admissibility_residual(std::span<const double> a, int n, int m, double s0, double tau) {
  check_b_given_inputs(a, n, m, s0, tau);
  const auto b = solve_b_system(a, n, m, s0, tau).x;
  const int k = m + 1;
  double p = monomial_derivative(n, k, s0);
  for (int i = 0; i < n; ++i) p += a[i] * monomial_derivative(i, k, s0);
  double q = 0.0;
  for (int j = 0; j <= m; ++j) q += b[j] * delayed_monomial_derivative(j, k, s0, tau);
  return p + std::exp(-s0 * tau) * q;
}

std::vector<DesignResult> solve_control_mid(std::span<const double> a, int n, int m,
                                            const ControlGiven& given, const SearchWindow& window,
                                            const Deadline* deadline) {
  if (m < 0 || n < m || n < 1) throw_bad_input("degrees must satisfy n >= m >= 0 and n >= 1");
  if (static_cast<int>(a.size()) != n) {
    throw_bad_input("expected " + std::to_string(n) + " coefficients a_0..a_{n-1}");
  }
  for (double v : a) check_finite(v, "a");

  auto complete = [&](double s0, double tau, double solved) {
    const auto solution = solve_b_system(a, n, m, s0, tau);
    std::vector<Condition> conditions;
    for (int k = 0; k <= m + 1; ++k) conditions.push_back({s0, k});
    auto result = finish(Quasipolynomial(n, m, {a.begin(), a.end()}, solution.x, tau), conditions,
                         solution.condition_estimate, {s0});
    result.solved_parameter = solved;
    return result;
  };

  std::vector<DesignResult> results;
  if (const auto* delay = std::get_if<DelayGiven>(&given)) {
    const double tau = delay->tau;
    check_tau(tau);
    const double s0_min = window.s0_min.value_or(-50.0 / tau);
    if (!(s0_min < 0.0) || !std::isfinite(s0_min)) throw_bad_input("s0_min must be negative");
    std::vector<double> xs(kControlSearchSamples);
    for (int i = 0; i < kControlSearchSamples; ++i) {
      // 0 first so the roots come out in descending s0
      xs[i] = s0_min * static_cast<double>(i) / (kControlSearchSamples - 1);
    }
    const auto roots = scalar_roots(
        xs, [&](double s0) { return residual_or_nan(a, n, m, s0, tau); }, deadline);
    for (double s0 : roots) results.push_back(complete(s0, tau, s0));
  } else {
    const double s0 = std::get<RootGiven>(given).s0;
    check_finite(s0, "s0");
    const double tau_max = window.tau_max.value_or(100.0 / std::max(1.0, std::abs(s0)));
    if (!(tau_max > 0.0) || !std::isfinite(tau_max)) throw_bad_input("tau_max must be positive");
    std::vector<double> xs(kControlSearchSamples);
    xs[0] = tau_max * 1e-9;
    for (int i = 1; i < kControlSearchSamples; ++i) {
      xs[i] = tau_max * static_cast<double>(i) / (kControlSearchSamples - 1);
    }
    const auto roots = scalar_roots(
        xs, [&](double tau) { return residual_or_nan(a, n, m, s0, tau); }, deadline);
    for (double tau : roots) results.push_back(complete(s0, tau, tau));
  }

  // A sign flip of F without a zero (a pole of the completion) is not a design.
  std::erase_if(results, [](const DesignResult& r) {
    const double s0 = r.assigned_roots.front();
    return !(r.residuals.back() <= 1e-3 * r.quasipolynomial.scale(s0));
  });
  if (results.empty()) {
    throw Error(ErrorCode::NoAdmissiblePoint,
                "no admissible (s0, tau) pair in the search window; consult the admissibility "
                "region and choose a feasible value");
  }
  return results;
}

double AdmissibilityContour::s0_at(int i) const {
  return s0_min * (1.0 - static_cast<double>(i) / (s0_samples - 1));
}

double AdmissibilityContour::tau_at(int j) const {
  const double tau = tau_max * static_cast<double>(j) / (tau_samples - 1);
  return j == 0 ? kContourTauFloor : tau;
}

namespace {

// Marching squares over the sampled F; polylines are chained through shared
// cell edges. Edge key: 2 * node + {0: edge to the right, 1: edge upwards}.
std::vector<std::vector<std::pair<double, double>>> extract_zero_level(
    const AdmissibilityContour& c) {
  const int ns = c.s0_samples;
  const int nt = c.tau_samples;
  auto node = [&](int i, int j) { return static_cast<std::size_t>(j) * ns + i; };
  auto value = [&](int i, int j) { return c.grid[node(i, j)]; };
  auto h_edge = [&](int i, int j) { return 2 * node(i, j); };
  auto v_edge = [&](int i, int j) { return 2 * node(i, j) + 1; };

  auto crossing = [&](std::size_t key) {
    const std::size_t id = key / 2;
    const int i = static_cast<int>(id % ns);
    const int j = static_cast<int>(id / ns);
    const int i2 = (key % 2 == 0) ? i + 1 : i;
    const int j2 = (key % 2 == 0) ? j : j + 1;
    const double va = value(i, j);
    const double vb = value(i2, j2);
    const double t = va / (va - vb);
    const double s0 = c.s0_at(i) + t * (c.s0_at(i2) - c.s0_at(i));
    const double tau = c.tau_at(j) + t * (c.tau_at(j2) - c.tau_at(j));
    return std::pair{s0, tau};
  };

  std::vector<std::pair<std::size_t, std::size_t>> segments;
  for (int j = 0; j + 1 < nt; ++j) {
    for (int i = 0; i + 1 < ns; ++i) {
      const double v0 = value(i, j);
      const double v1 = value(i + 1, j);
      const double v2 = value(i + 1, j + 1);
      const double v3 = value(i, j + 1);
      if (std::isnan(v0) || std::isnan(v1) || std::isnan(v2) || std::isnan(v3)) continue;
      const bool p0 = v0 > 0, p1 = v1 > 0, p2 = v2 > 0, p3 = v3 > 0;
      const std::size_t bottom = h_edge(i, j), right = v_edge(i + 1, j);
      const std::size_t top = h_edge(i, j + 1), left = v_edge(i, j);
      std::vector<std::size_t> cut;
      if (p0 != p1) cut.push_back(bottom);
      if (p1 != p2) cut.push_back(right);
      if (p2 != p3) cut.push_back(top);
      if (p3 != p0) cut.push_back(left);
      if (cut.size() == 2) {
        segments.emplace_back(cut[0], cut[1]);
      } else if (cut.size() == 4) {
        const bool center = 0.25 * (v0 + v1 + v2 + v3) > 0;
        if (center == p0) {
          segments.emplace_back(bottom, right);
          segments.emplace_back(top, left);
        } else {
          segments.emplace_back(left, bottom);
          segments.emplace_back(right, top);
        }
      }
    }
  }

  std::vector<std::pair<std::size_t, std::array<std::size_t, 2>>> adjacency;
  {
    std::vector<std::pair<std::size_t, std::size_t>> ends;
    ends.reserve(2 * segments.size());
    for (const auto& [u, v] : segments) {
      ends.emplace_back(u, v);
      ends.emplace_back(v, u);
    }
    std::sort(ends.begin(), ends.end());
    for (const auto& [u, v] : ends) {
      if (adjacency.empty() || adjacency.back().first != u) {
        adjacency.push_back({u, {v, SIZE_MAX}});
      } else {
        adjacency.back().second[1] = v;
      }
    }
  }
  auto find = [&](std::size_t key) {
    auto it = std::lower_bound(adjacency.begin(), adjacency.end(), key,
                               [](const auto& entry, std::size_t k) { return entry.first < k; });
    return static_cast<std::size_t>(it - adjacency.begin());
  };

  std::vector<char> visited(adjacency.size(), 0);
  std::vector<std::vector<std::pair<double, double>>> lines;
  auto walk = [&](std::size_t start) {
    std::vector<std::pair<double, double>> line;
    std::size_t prev = SIZE_MAX;
    std::size_t cur = start;
    while (true) {
      const std::size_t idx = find(cur);
      if (visited[idx]) {
        line.push_back(crossing(cur));  // closed loop
        break;
      }
      visited[idx] = 1;
      line.push_back(crossing(cur));
      const auto& nb = adjacency[idx].second;
      std::size_t next = (nb[0] != prev) ? nb[0] : nb[1];
      if (nb[0] == prev && nb[1] == SIZE_MAX) next = SIZE_MAX;
      if (next == SIZE_MAX) break;
      prev = cur;
      cur = next;
    }
    lines.push_back(std::move(line));
  };
  for (std::size_t k = 0; k < adjacency.size(); ++k) {
    if (!visited[k] && adjacency[k].second[1] == SIZE_MAX) walk(adjacency[k].first);
  }
  for (std::size_t k = 0; k < adjacency.size(); ++k) {
    if (!visited[k]) walk(adjacency[k].first);
  }
  return lines;
}

}  // namespace

AdmissibilityContour admissibility_contour(std::span<const double> a, int n, int m, double s0_min,
                                           double tau_max, int s0_samples, int tau_samples,
                                           const Deadline* deadline) {
  check_b_given_inputs(a, n, m, -1.0, 1.0);
  if (!(s0_min < 0.0) || !std::isfinite(s0_min)) throw_bad_input("s0_min must be negative");
  if (!(tau_max > 0.0) || !std::isfinite(tau_max)) throw_bad_input("tau_max must be positive");
  if (s0_samples < 8 || tau_samples < 8) throw_bad_input("grid resolution must be at least 8x8");
  if (static_cast<long long>(s0_samples) * tau_samples > 25'000'000LL) {
    throw_bad_input("grid resolution too large");
  }

  AdmissibilityContour contour{s0_min, tau_max, s0_samples, tau_samples, {}, {}};
  contour.grid.assign(static_cast<std::size_t>(s0_samples) * tau_samples, 0.0);
  if (deadline) deadline->set_total(static_cast<std::size_t>(tau_samples));
  parallel_for(static_cast<std::size_t>(tau_samples), [&](std::size_t row) {
    check_deadline(deadline);
    const int j = static_cast<int>(row);
    const double tau = contour.tau_at(j);
    for (int i = 0; i < s0_samples; ++i) {
      contour.grid[row * s0_samples + i] = residual_or_nan(a, n, m, contour.s0_at(i), tau);
    }
    if (deadline) deadline->advance();
  });
  contour.polylines = extract_zero_level(contour);
  return contour;
}

}  // namespace delayplace
