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
#include "delayplace/delayplace.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <new>
#include <string>
#include <vector>

#include "core/api.hpp"
#include "core/design.hpp"
#include "core/error.hpp"
#include "core/parallel.hpp"
#include "core/rootfinder.hpp"
#include "core/simulate.hpp"

struct dp_quasipoly {
  delayplace::Quasipolynomial value;
};
struct dp_design {
  delayplace::DesignResult value;
};
struct dp_rootset {
  delayplace::RootSet value;
};
struct dp_trajectory {
  delayplace::Trajectory value;
};
struct dp_document {
  std::string text;
};

namespace {

using delayplace::Error;
using delayplace::ErrorCode;

thread_local std::string t_last_error;

dp_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::BadInput: return DP_ERR_BAD_INPUT;
    case ErrorCode::SingularSystem: return DP_ERR_SINGULAR_SYSTEM;
    case ErrorCode::NoAdmissiblePoint: return DP_ERR_NO_ADMISSIBLE_POINT;
    case ErrorCode::ContourTooClose: return DP_ERR_CONTOUR_TOO_CLOSE;
    case ErrorCode::RootOnBoundary: return DP_ERR_ROOT_ON_BOUNDARY;
    case ErrorCode::ConvergenceFailure: return DP_ERR_CONVERGENCE_FAILURE;
    case ErrorCode::AssignedRootMissing: return DP_ERR_ASSIGNED_ROOT_MISSING;
    case ErrorCode::InvalidPerturbation: return DP_ERR_INVALID_PERTURBATION;
    case ErrorCode::BlowUp: return DP_ERR_BLOW_UP;
    case ErrorCode::DeadlineExceeded: return DP_ERR_DEADLINE_EXCEEDED;
    case ErrorCode::Internal: return DP_ERR_INTERNAL;
  }
  return DP_ERR_INTERNAL;
}

/// Runs body, translating exceptions into a status. on_error sees the Error
/// (so dp_execute can serialize it).
template <class Body, class OnError>
dp_status guard(Body&& body, OnError&& on_error) {
  t_last_error.clear();
  try {
    body();
    return DP_OK;
  } catch (const delayplace::MalformedRequest& e) {
    t_last_error = e.what();
    on_error(e);
    return DP_ERR_MALFORMED_REQUEST;
  } catch (const Error& e) {
    t_last_error = e.what();
    on_error(e);
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    const Error e(ErrorCode::Internal, "out of memory");
    t_last_error = e.what();
    on_error(e);
  } catch (const std::exception& ex) {
    const Error e(ErrorCode::Internal, ex.what());
    t_last_error = e.what();
    on_error(e);
  } catch (...) {
    const Error e(ErrorCode::Internal, "unknown failure");
    t_last_error = e.what();
    on_error(e);
  }
  return DP_ERR_INTERNAL;
}

template <class Body>
dp_status guard(Body&& body) {
  return guard(std::forward<Body>(body), [](const Error&) {});
}

void require(bool ok, const char* message) {
  if (!ok) delayplace::throw_bad_input(message);
}

}  // namespace

extern "C" {

const char* dp_version(void) { return DELAYPLACE_VERSION; }

const char* dp_status_name(dp_status status) {
  switch (status) {
    case DP_OK: return "ok";
    case DP_ERR_MALFORMED_REQUEST: return "bad_input";
    case DP_ERR_BAD_INPUT: return "bad_input";
    case DP_ERR_SINGULAR_SYSTEM: return "singular_system";
    case DP_ERR_NO_ADMISSIBLE_POINT: return "no_admissible_point";
    case DP_ERR_CONTOUR_TOO_CLOSE: return "contour_too_close";
    case DP_ERR_ROOT_ON_BOUNDARY: return "root_on_boundary";
    case DP_ERR_CONVERGENCE_FAILURE: return "convergence_failure";
    case DP_ERR_ASSIGNED_ROOT_MISSING: return "assigned_root_missing";
    case DP_ERR_INVALID_PERTURBATION: return "invalid_perturbation";
    case DP_ERR_BLOW_UP: return "blow_up";
    case DP_ERR_DEADLINE_EXCEEDED: return "deadline_exceeded";
    case DP_ERR_INTERNAL: return "internal";
  }
  return "internal";
}

const char* dp_last_error(void) { return t_last_error.c_str(); }

void dp_set_thread_budget(unsigned threads) { delayplace::set_thread_budget(threads); }

dp_status dp_set_default_grid(int s0_samples, int tau_samples) {
  return guard([&] { delayplace::set_default_grid(s0_samples, tau_samples); });
}

dp_status dp_quasipoly_create(int n, int m, const double* a, const double* b, double tau,
                              dp_quasipoly** out) {
  return guard([&] {
    require(out != nullptr, "output handle is NULL");
    require(n >= 0 && m >= 0, "degrees must be non-negative");
    require(n == 0 || a != nullptr, "a is NULL");
    require(b != nullptr, "b is NULL");
    *out = nullptr;
    std::vector<double> av(a, a + n);
    std::vector<double> bv(b, b + m + 1);
    *out = new dp_quasipoly{delayplace::Quasipolynomial(n, m, std::move(av), std::move(bv), tau)};
  });
}

void dp_quasipoly_destroy(dp_quasipoly* q) { delete q; }
int dp_quasipoly_n(const dp_quasipoly* q) { return q->value.n(); }
int dp_quasipoly_m(const dp_quasipoly* q) { return q->value.m(); }
double dp_quasipoly_tau(const dp_quasipoly* q) { return q->value.tau(); }

void dp_quasipoly_coefficients(const dp_quasipoly* q, double* a, double* b) {
  if (a != nullptr) std::copy(q->value.a().begin(), q->value.a().end(), a);
  if (b != nullptr) std::copy(q->value.b().begin(), q->value.b().end(), b);
}

dp_status dp_quasipoly_evaluate(const dp_quasipoly* q, double re, double im, int k, double* out_re,
                                double* out_im) {
  return guard([&] {
    require(q != nullptr && out_re != nullptr && out_im != nullptr, "NULL argument");
    const auto v = q->value.derivative({re, im}, k);
    *out_re = v.real();
    *out_im = v.imag();
  });
}

dp_status dp_design_generic_mid(int n, int m, double tau, double s0, dp_design** out) {
  return guard([&] {
    require(out != nullptr, "output handle is NULL");
    *out = nullptr;
    *out = new dp_design{delayplace::solve_generic_mid(n, m, tau, s0)};
  });
}

dp_status dp_design_generic_crrid(int n, int m, double tau, const double* roots, size_t count,
                                  dp_design** out) {
  return guard([&] {
    require(out != nullptr, "output handle is NULL");
    require(count == 0 || roots != nullptr, "roots is NULL");
    *out = nullptr;
    std::vector<double> sorted(roots, roots + count);
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    *out = new dp_design{delayplace::solve_generic_crrid(n, m, tau, sorted)};
  });
}

dp_status dp_design_control_mid_tau(int n, int m, const double* a, double tau, size_t index,
                                    dp_design** out) {
  return guard([&] {
    require(out != nullptr, "output handle is NULL");
    require(n == 0 || a != nullptr, "a is NULL");
    *out = nullptr;
    const std::vector<double> av(a, a + std::max(n, 0));
    auto all = delayplace::solve_control_mid(av, n, m, delayplace::DelayGiven{tau});
    require(index < all.size(), "completion index out of range");
    *out = new dp_design{std::move(all[index])};
  });
}

void dp_design_destroy(dp_design* d) { delete d; }

dp_status dp_design_quasipoly(const dp_design* d, dp_quasipoly** out) {
  return guard([&] {
    require(d != nullptr && out != nullptr, "NULL argument");
    *out = new dp_quasipoly{d->value.quasipolynomial};
  });
}

double dp_design_condition(const dp_design* d) { return d->value.condition_estimate; }
size_t dp_design_residual_count(const dp_design* d) { return d->value.residuals.size(); }

double dp_design_residual(const dp_design* d, size_t i) {
  return i < d->value.residuals.size() ? d->value.residuals[i] : std::numeric_limits<double>::quiet_NaN();
}

int dp_design_within_tolerance(const dp_design* d) { return d->value.within_tolerance() ? 1 : 0; }

dp_status dp_find_roots(const dp_quasipoly* q, double x_min, double x_max, double y_min, double y_max,
                        dp_rootset** out) {
  return guard([&] {
    require(q != nullptr && out != nullptr, "NULL argument");
    *out = nullptr;
    const delayplace::ComplexRectangle rect{x_min, x_max, y_min, y_max};
    *out = new dp_rootset{delayplace::find_roots(q->value, rect)};
  });
}

void dp_rootset_destroy(dp_rootset* r) { delete r; }
size_t dp_rootset_size(const dp_rootset* r) { return r->value.roots.size(); }
int dp_rootset_winding_count(const dp_rootset* r) { return r->value.winding_count; }

dp_status dp_rootset_root(const dp_rootset* r, size_t i, double* re, double* im, int* multiplicity) {
  return guard([&] {
    require(r != nullptr, "NULL rootset");
    require(i < r->value.roots.size(), "root index out of range");
    const auto& root = r->value.roots[i];
    if (re != nullptr) *re = root.location.real();
    if (im != nullptr) *im = root.location.imag();
    if (multiplicity != nullptr) *multiplicity = root.multiplicity;
  });
}

dp_status dp_rootset_dominance(const dp_rootset* r, double s0, int* dominant, double* margin) {
  return guard([&] {
    require(r != nullptr, "NULL rootset");
    const auto report = delayplace::certify_dominance(r->value, s0);
    if (dominant != nullptr) *dominant = report.dominant ? 1 : 0;
    if (margin != nullptr) *margin = report.margin;
  });
}

dp_status dp_simulate_constant(const dp_quasipoly* q, double c, double T, int steps_per_delay,
                               dp_trajectory** out) {
  return guard([&] {
    require(q != nullptr && out != nullptr, "NULL argument");
    *out = nullptr;
    *out = new dp_trajectory{delayplace::simulate(q->value, delayplace::initial::Constant{c}, T, steps_per_delay)};
  });
}

void dp_trajectory_destroy(dp_trajectory* t) { delete t; }
size_t dp_trajectory_size(const dp_trajectory* t) { return t->value.t.size(); }
double dp_trajectory_step(const dp_trajectory* t) { return t->value.h; }
const double* dp_trajectory_times(const dp_trajectory* t) { return t->value.t.data(); }
const double* dp_trajectory_values(const dp_trajectory* t) { return t->value.y.data(); }

dp_status dp_execute(const char* operation, const char* request, dp_format format, dp_document** out) {
  if (out == nullptr) {
    t_last_error = "output handle is NULL";
    return DP_ERR_BAD_INPUT;
  }
  *out = nullptr;
  auto* doc = new (std::nothrow) dp_document{};
  if (doc == nullptr) {
    t_last_error = "out of memory";
    return DP_ERR_INTERNAL;
  }
  const dp_status status = guard(
      [&] {
        require(operation != nullptr && request != nullptr, "operation and request must be non-NULL");
        doc->text = delayplace::execute(operation, request,
                                        format == DP_FORMAT_CSV ? delayplace::OutputFormat::Csv
                                                                : delayplace::OutputFormat::Json);
      },
      [&](const Error& e) { doc->text = delayplace::error_document(e); });
  *out = doc;
  return status;
}

dp_status dp_health(dp_document** out) {
  return guard([&] {
    require(out != nullptr, "output handle is NULL");
    *out = new dp_document{delayplace::health_document()};
  });
}

const char* dp_document_text(const dp_document* doc) { return doc->text.c_str(); }
size_t dp_document_size(const dp_document* doc) { return doc->text.size(); }
void dp_document_destroy(dp_document* doc) { delete doc; }

}  // extern "C"
