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
#ifndef DELAYPLACE_DELAYPLACE_H_
#define DELAYPLACE_DELAYPLACE_H_

/* C interface to the delayplace library.
 *
 * Objects are opaque handles created by dp_*_create or by an operation and
 * released with the matching dp_*_destroy. Every fallible call returns a
 * dp_status; on failure dp_last_error() holds a message for the calling
 * thread. Coefficient arrays are ordered lowest degree first. */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(DELAYPLACE_BUILDING_LIBRARY)
#define DP_API __attribute__((visibility("default")))
#else
#define DP_API
#endif

typedef enum dp_status {
  DP_OK = 0,
  DP_ERR_BAD_INPUT = 1,
  DP_ERR_SINGULAR_SYSTEM = 2,
  DP_ERR_NO_ADMISSIBLE_POINT = 3,
  DP_ERR_CONTOUR_TOO_CLOSE = 4,
  DP_ERR_ROOT_ON_BOUNDARY = 5,
  DP_ERR_CONVERGENCE_FAILURE = 6,
  DP_ERR_ASSIGNED_ROOT_MISSING = 7,
  DP_ERR_INVALID_PERTURBATION = 8,
  DP_ERR_BLOW_UP = 9,
  DP_ERR_DEADLINE_EXCEEDED = 10,
  DP_ERR_INTERNAL = 11,
  /* Request text was not a JSON object. Reported as bad_input in documents. */
  DP_ERR_MALFORMED_REQUEST = 12
} dp_status;

typedef enum dp_format { DP_FORMAT_JSON = 0, DP_FORMAT_CSV = 1 } dp_format;

typedef struct dp_quasipoly dp_quasipoly;
typedef struct dp_design dp_design;
typedef struct dp_rootset dp_rootset;
typedef struct dp_trajectory dp_trajectory;
typedef struct dp_document dp_document;

DP_API const char* dp_version(void);
/* Wire name of a status ("bad_input", ...); "ok" for DP_OK. */
DP_API const char* dp_status_name(dp_status status);
/* Message of the last failed call on this thread, "" if none. */
DP_API const char* dp_last_error(void);
/* 0 selects the hardware concurrency. */
DP_API void dp_set_thread_budget(unsigned threads);
DP_API dp_status dp_set_default_grid(int s0_samples, int tau_samples);

/* Quasipolynomial s^n + sum a_k s^k + exp(-s tau) sum b_k s^k.
 * a has n entries, b has m + 1. */
DP_API dp_status dp_quasipoly_create(int n, int m, const double* a, const double* b, double tau,
                                     dp_quasipoly** out);
DP_API void dp_quasipoly_destroy(dp_quasipoly* q);
DP_API int dp_quasipoly_n(const dp_quasipoly* q);
DP_API int dp_quasipoly_m(const dp_quasipoly* q);
DP_API double dp_quasipoly_tau(const dp_quasipoly* q);
/* Copies n values of a and m + 1 values of b; either pointer may be NULL. */
DP_API void dp_quasipoly_coefficients(const dp_quasipoly* q, double* a, double* b);
/* k-th derivative at s = re + i im. */
DP_API dp_status dp_quasipoly_evaluate(const dp_quasipoly* q, double re, double im, int k,
                                       double* out_re, double* out_im);

DP_API dp_status dp_design_generic_mid(int n, int m, double tau, double s0, dp_design** out);
/* roots may be in any order. */
DP_API dp_status dp_design_generic_crrid(int n, int m, double tau, const double* roots, size_t count,
                                         dp_design** out);
/* index selects among the admissible completions; 0 is the default. */
DP_API dp_status dp_design_control_mid_tau(int n, int m, const double* a, double tau, size_t index,
                                           dp_design** out);
DP_API void dp_design_destroy(dp_design* d);
/* New handle owned by the caller. */
DP_API dp_status dp_design_quasipoly(const dp_design* d, dp_quasipoly** out);
DP_API double dp_design_condition(const dp_design* d);
DP_API size_t dp_design_residual_count(const dp_design* d);
DP_API double dp_design_residual(const dp_design* d, size_t i);
DP_API int dp_design_within_tolerance(const dp_design* d);

DP_API dp_status dp_find_roots(const dp_quasipoly* q, double x_min, double x_max, double y_min,
                               double y_max, dp_rootset** out);
DP_API void dp_rootset_destroy(dp_rootset* r);
DP_API size_t dp_rootset_size(const dp_rootset* r);
DP_API int dp_rootset_winding_count(const dp_rootset* r);
DP_API dp_status dp_rootset_root(const dp_rootset* r, size_t i, double* re, double* im, int* multiplicity);
/* dominant is set to 1 or 0; margin is +inf when no other root lies in the window. */
DP_API dp_status dp_rootset_dominance(const dp_rootset* r, double s0, int* dominant, double* margin);

/* Constant initial function y = c on [-tau, 0]. Other families go through dp_execute. */
DP_API dp_status dp_simulate_constant(const dp_quasipoly* q, double c, double T, int steps_per_delay,
                                      dp_trajectory** out);
DP_API void dp_trajectory_destroy(dp_trajectory* t);
DP_API size_t dp_trajectory_size(const dp_trajectory* t);
DP_API double dp_trajectory_step(const dp_trajectory* t);
/* Pointers stay valid until the handle is destroyed. */
DP_API const double* dp_trajectory_times(const dp_trajectory* t);
DP_API const double* dp_trajectory_values(const dp_trajectory* t);

/* Runs a named operation ("generic-mid", "generic-crrid", "control-mid",
 * "admissibility", "roots", "sensitivity", "simulate", "report") on a JSON
 * request. *out always receives a document: the result on DP_OK, otherwise
 * an error object {"code","message","details"}. */
DP_API dp_status dp_execute(const char* operation, const char* request, dp_format format,
                            dp_document** out);
DP_API dp_status dp_health(dp_document** out);
DP_API const char* dp_document_text(const dp_document* doc);
DP_API size_t dp_document_size(const dp_document* doc);
DP_API void dp_document_destroy(dp_document* doc);

#ifdef __cplusplus
}
#endif

#endif /* DELAYPLACE_DELAYPLACE_H_ */
