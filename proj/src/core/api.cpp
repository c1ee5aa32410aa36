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
#include "core/api.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <optional>

#include "core/design.hpp"
#include "core/json_io.hpp"
#include "core/rootfinder.hpp"
#include "core/simulate.hpp"

namespace delayplace {

namespace {

std::atomic<int> g_grid_s0{400};
std::atomic<int> g_grid_tau{400};

bool has(const Json& j, const char* name) { return j.is_object() && j.contains(name); }

std::optional<double> optional_number(const Json& j, const char* name) {
  if (!has(j, name) || j.at(name).is_null()) return std::nullopt;
  return number_field(j, name);
}

const Json& object_field(const Json& j, const char* name) {
  if (!has(j, name)) throw_bad_input(std::string("missing field '") + name + "'");
  const Json& v = j.at(name);
  if (!v.is_object()) throw_bad_input(std::string("field '") + name + "' must be an object");
  return v;
}

struct Request {
  Json body;
  std::optional<Deadline> deadline;

  const Deadline* watch() const { return deadline ? &*deadline : nullptr; }
};

void parse(std::string_view text, Request& req) {
  try {
    req.body = Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw MalformedRequest(std::string("malformed JSON: ") + e.what());
  }
  if (!req.body.is_object()) throw MalformedRequest("request body must be a JSON object");
  if (auto ms = optional_number(req.body, "deadline_ms")) {
    if (!(*ms > 0.0) || !std::isfinite(*ms)) throw_bad_input("deadline_ms must be positive");
    req.deadline.emplace(std::chrono::milliseconds(static_cast<long long>(std::ceil(*ms))));
  }
}

DesignResult generic_mid(const Json& b) {
  return solve_generic_mid(integer_field(b, "n"), integer_field(b, "m"), number_field(b, "tau"),
                           number_field(b, "s0"));
}

DesignResult generic_crrid(const Json& b) {
  auto roots = number_array_field(b, "roots");
  std::sort(roots.begin(), roots.end(), std::greater<>());
  return solve_generic_crrid(integer_field(b, "n"), integer_field(b, "m"), number_field(b, "tau"), roots);
}

std::vector<DesignResult> control_mid(const Json& b, const Deadline* deadline) {
  const Json& g = object_field(b, "given");
  const bool by_tau = g.contains("tau");
  const bool by_s0 = g.contains("s0");
  if (by_tau == by_s0) throw_bad_input("'given' must hold exactly one of tau or s0");
  const ControlGiven given = by_tau ? ControlGiven{DelayGiven{number_field(g, "tau")}}
                                    : ControlGiven{RootGiven{number_field(g, "s0")}};
  SearchWindow window;
  if (has(b, "window")) {
    const Json& w = object_field(b, "window");
    window.s0_min = optional_number(w, "s0_min");
    window.tau_max = optional_number(w, "tau_max");
  }
  if (auto v = optional_number(b, "s0_search_min")) window.s0_min = v;
  if (auto v = optional_number(b, "tau_search_max")) window.tau_max = v;
  return solve_control_mid(number_array_field(b, "a"), integer_field(b, "n"), integer_field(b, "m"),
                           given, window, deadline);
}

AdmissibilityContour admissibility(const Json& b, const Deadline* deadline) {
  int ns = g_grid_s0.load();
  int nt = g_grid_tau.load();
  if (has(b, "grid")) {
    const Json& g = b.at("grid");
    if (g.is_number_integer()) {
      ns = nt = integer_field(b, "grid");
    } else if (g.is_array() && g.size() == 2 && g[0].is_number_integer() && g[1].is_number_integer()) {
      ns = g[0].get<int>();
      nt = g[1].get<int>();
    } else {
      throw_bad_input("grid must be an integer or [s0_samples, tau_samples]");
    }
  }
  return admissibility_contour(number_array_field(b, "a"), integer_field(b, "n"), integer_field(b, "m"),
                               number_field(b, "s0_min"), number_field(b, "tau_max"), ns, nt, deadline);
}

Quasipolynomial quasipolynomial_of(const Json& b) { return quasipolynomial_from_json(object_field(b, "q")); }

ComplexRectangle rect_of(const Json& b) {
  if (!has(b, "rect")) throw_bad_input("missing field 'rect'");
  return rectangle_from_json(b.at("rect"));
}

int steps_of(const Json& b) {
  if (has(b, "steps")) return integer_field(b, "steps");
  if (has(b, "steps_per_delay")) return integer_field(b, "steps_per_delay");
  return kDefaultStepsPerDelay;
}

/// Window around the assigned roots used when a report omits "rect".
ComplexRectangle default_window(const DesignResult& d) {
  const auto [lo, hi] = std::minmax_element(d.assigned_roots.begin(), d.assigned_roots.end());
  const double tau = d.quasipolynomial.tau();
  const double reach = 10.0 + (*hi - *lo) + 2.0 / tau;
  const double height = std::max(50.0, 20.0 / tau);
  return {*lo - reach, *hi + std::max(5.0, 0.5 * std::abs(*hi)), -height, height};
}

Json report(const Json& b, const Deadline* deadline) {
  const Json& request = object_field(b, "design");
  if (!has(request, "method") || !request.at("method").is_string()) {
    throw_bad_input("design.method must be one of generic-mid, generic-crrid, control-mid");
  }
  const std::string method = request.at("method").get<std::string>();
  std::optional<DesignResult> design;
  if (method == "generic-mid") {
    design = generic_mid(request);
  } else if (method == "generic-crrid") {
    design = generic_crrid(request);
  } else if (method == "control-mid") {
    design = control_mid(request, deadline).front();
  } else {
    throw_bad_input("unknown design method '" + method + "'");
  }

  const ComplexRectangle rect = has(b, "rect") ? rectangle_from_json(b.at("rect")) : default_window(*design);
  const RootSet roots = find_roots(design->quasipolynomial, rect, {}, deadline);
  const double s0 = *std::max_element(design->assigned_roots.begin(), design->assigned_roots.end());

  Json out;
  out["design"] = to_json(*design);
  out["roots"] = to_json(roots, certify_dominance(roots, s0));
  if (has(b, "simulation")) {
    const Json& sim = object_field(b, "simulation");
    out["simulation"] = to_json(simulate(design->quasipolynomial,
                                         initial_condition_from_json(object_field(sim, "ic")),
                                         number_field(sim, "T"), steps_of(sim), deadline));
  }
  return out;
}

std::string emit(const Json& j) { return j.dump(); }

[[noreturn]] void no_csv(std::string_view op) {
  throw_bad_input("csv output is not available for " + std::string(op));
}

}  // namespace

bool is_operation(std::string_view operation) {
  return std::find(std::begin(kOperations), std::end(kOperations), operation) != std::end(kOperations);
}

void set_default_grid(int s0_samples, int tau_samples) {
  if (s0_samples < 8 || tau_samples < 8) throw_bad_input("default grid needs at least 8 samples per axis");
  g_grid_s0 = s0_samples;
  g_grid_tau = tau_samples;
}

std::string execute(std::string_view op, std::string_view text, OutputFormat format) {
  if (!is_operation(op)) throw_bad_input("unknown operation '" + std::string(op) + "'");
  Request req;
  parse(text, req);
  const Json& b = req.body;
  const bool csv = format == OutputFormat::Csv;

  try {
    if (op == "generic-mid") {
      if (csv) no_csv(op);
      return emit(to_json(generic_mid(b)));
    }
    if (op == "generic-crrid") {
      if (csv) no_csv(op);
      return emit(to_json(generic_crrid(b)));
    }
    if (op == "control-mid") {
      if (csv) no_csv(op);
      return emit(to_json(control_mid(b, req.watch())));
    }
    if (op == "admissibility") {
      const auto contour = admissibility(b, req.watch());
      return csv ? contour_csv(contour) : emit(to_json(contour));
    }
    if (op == "roots") {
      const auto q = quasipolynomial_of(b);
      const auto rect = rect_of(b);
      const RootSet roots = find_roots(q, rect, {}, req.watch());
      if (csv) return roots_csv(roots);
      std::optional<DominanceReport> dominance;
      if (auto s0 = optional_number(b, "s0")) dominance = certify_dominance(roots, *s0);
      return emit(to_json(roots, dominance));
    }
    if (op == "sensitivity") {
      const auto q = quasipolynomial_of(b);
      const auto rect = rect_of(b);
      const auto sweep = sensitivity_sweep(q, number_field(b, "epsilon"), integer_field(b, "K"), rect, {},
                                           req.watch());
      return csv ? sweep_csv(sweep) : emit(to_json(sweep));
    }
    if (op == "simulate") {
      const auto q = quasipolynomial_of(b);
      const auto traj = simulate(q, initial_condition_from_json(object_field(b, "ic")), number_field(b, "T"),
                                 steps_of(b), req.watch());
      return csv ? trajectory_csv(traj) : emit(to_json(traj));
    }
    // report
    if (csv) no_csv(op);
    return emit(report(b, req.watch()));
  } catch (const Error&) {
    throw;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::BadInput, std::string("invalid request: ") + e.what());
  } catch (const std::bad_alloc&) {
    throw Error(ErrorCode::Internal, "out of memory");
  } catch (const std::exception& e) {
    throw Error(ErrorCode::Internal, e.what());
  }
}

std::string health_document() {
  Json j;
  j["status"] = "ok";
  j["version"] = DELAYPLACE_VERSION;
  j["build"] = Json{{"compiler", __VERSION__},
                    {"cplusplus", __cplusplus},
#ifdef NDEBUG
                    {"type", "release"},
#else
                    {"type", "debug"},
#endif
                    {"hardware_threads", thread_budget()}};
  j["operations"] = Json::array();
  for (auto op : kOperations) j["operations"].push_back(std::string(op));
  return j.dump();
}

std::string error_document(const Error& error) { return to_json(error).dump(); }

}  // namespace delayplace
