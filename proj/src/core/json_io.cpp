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
#include "core/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace delayplace {

namespace {

std::string full_precision(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const Json& require(const Json& j, const char* name) {
  if (!j.is_object()) throw_bad_input("expected a JSON object");
  const auto it = j.find(name);
  if (it == j.end()) throw_bad_input(std::string("missing field '") + name + "'");
  return *it;
}

Json nullable(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

}  // namespace

double number_field(const Json& j, const char* name) {
  const Json& v = require(j, name);
  if (!v.is_number()) throw_bad_input(std::string("field '") + name + "' must be a number");
  return v.get<double>();
}

int integer_field(const Json& j, const char* name) {
  const Json& v = require(j, name);
  if (v.is_number_integer()) {
    const auto x = v.get<long long>();
    if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max()) {
      throw_bad_input(std::string("field '") + name + "' out of range");
    }
    return static_cast<int>(x);
  }
  if (v.is_number_float()) {
    const double x = v.get<double>();
    if (x == std::floor(x) && std::abs(x) < 1e9) return static_cast<int>(x);
  }
  throw_bad_input(std::string("field '") + name + "' must be an integer");
}

std::vector<double> number_array_field(const Json& j, const char* name) {
  const Json& v = require(j, name);
  if (!v.is_array()) throw_bad_input(std::string("field '") + name + "' must be an array of numbers");
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& x : v) {
    if (!x.is_number()) throw_bad_input(std::string("field '") + name + "' must contain only numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

Json to_json(const Quasipolynomial& q) {
  Json j;
  j["n"] = q.n();
  j["m"] = q.m();
  j["a"] = std::vector<double>(q.a().begin(), q.a().end());
  j["b"] = std::vector<double>(q.b().begin(), q.b().end());
  j["tau"] = q.tau();
  return j;
}

Json to_json(const DesignResult& r) {
  Json j;
  j["quasipolynomial"] = to_json(r.quasipolynomial);
  j["residuals"] = r.residuals;
  j["condition_estimate"] = r.condition_estimate;
  j["solved_parameter"] = r.solved_parameter ? Json(*r.solved_parameter) : Json(nullptr);
  if (r.assigned_roots.size() == 1) {
    j["s0"] = r.assigned_roots.front();
  } else {
    j["roots"] = r.assigned_roots;
  }
  j["type"] = r.quasipolynomial.type() == DelayType::Neutral ? "neutral" : "retarded";
  j["within_tolerance"] = r.within_tolerance();
  return j;
}

Json to_json(const std::vector<DesignResult>& results) {
  Json arr = Json::array();
  for (const auto& r : results) arr.push_back(to_json(r));
  return arr;
}

Json to_json(const ComplexRectangle& rect) {
  return Json{{"x_min", rect.x_min}, {"x_max", rect.x_max}, {"y_min", rect.y_min}, {"y_max", rect.y_max}};
}

Json to_json(const RootSet& roots, const std::optional<DominanceReport>& dominance) {
  Json j;
  j["rectangle"] = to_json(roots.rectangle);
  Json list = Json::array();
  for (const auto& r : roots.roots) {
    list.push_back(Json::array({r.location.real(), r.location.imag(), r.multiplicity, nullable(r.residual)}));
  }
  j["roots"] = std::move(list);
  j["winding_count"] = roots.winding_count;
  j["window_abscissa"] = nullable(roots.window_abscissa);
  if (dominance) {
    j["dominance"] = Json{{"dominant", dominance->dominant}, {"margin", nullable(dominance->margin)}};
  }
  return j;
}

Json to_json(const SensitivitySweep& sweep) {
  Json j;
  j["epsilon"] = sweep.epsilon;
  j["K"] = sweep.K;
  Json per_k = Json::object();
  for (const auto& [k, set] : sweep.per_k) per_k[std::to_string(k)] = to_json(set);
  j["per_k"] = std::move(per_k);
  return j;
}

Json to_json(const AdmissibilityContour& contour) {
  Json j;
  j["rectangle"] = Json{{"s0_min", contour.s0_min}, {"s0_max", 0.0}, {"tau_min", 0.0},
                        {"tau_max", contour.tau_max}};
  j["resolution"] = Json::array({contour.s0_samples, contour.tau_samples});
  j["tau_floor"] = kContourTauFloor;
  Json grid = Json::array();
  for (double v : contour.grid) grid.push_back(nullable(v));
  j["grid"] = std::move(grid);
  Json lines = Json::array();
  for (const auto& line : contour.polylines) {
    Json pts = Json::array();
    for (const auto& [s0, tau] : line) pts.push_back(Json::array({s0, tau}));
    lines.push_back(std::move(pts));
  }
  j["polylines"] = std::move(lines);
  return j;
}

Json to_json(const Trajectory& trajectory) {
  const Trajectory sent = decimate(trajectory, kTransportSamples);
  const std::size_t stride =
      sent.t.size() == trajectory.t.size() ? 1 : (trajectory.t.size() + sent.t.size() - 2) / (sent.t.size() - 1);
  Json j;
  j["h"] = trajectory.h;
  j["samples"] = trajectory.t.size();
  j["stride"] = stride;
  j["t"] = sent.t;
  j["y"] = sent.y;
  return j;
}

Json to_json(const Error& error) {
  Json j;
  j["code"] = std::string(error_code_name(error.code()));
  j["message"] = error.what();
  if (!error.details().empty()) {
    Json details = Json::object();
    for (const auto& [k, v] : error.details()) details[k] = nullable(v);
    j["details"] = std::move(details);
  }
  return j;
}

Quasipolynomial quasipolynomial_from_json(const Json& j) {
  return Quasipolynomial(integer_field(j, "n"), integer_field(j, "m"), number_array_field(j, "a"),
                         number_array_field(j, "b"), number_field(j, "tau"));
}

ComplexRectangle rectangle_from_json(const Json& j) {
  ComplexRectangle rect{};
  if (j.is_array()) {
    if (j.size() != 4) throw_bad_input("rectangle array must be [x_min, x_max, y_min, y_max]");
    for (const auto& v : j) {
      if (!v.is_number()) throw_bad_input("rectangle bounds must be numbers");
    }
    rect = {j[0].get<double>(), j[1].get<double>(), j[2].get<double>(), j[3].get<double>()};
  } else {
    rect = {number_field(j, "x_min"), number_field(j, "x_max"), number_field(j, "y_min"),
            number_field(j, "y_max")};
  }
  rect.validate();
  return rect;
}

InitialCondition initial_condition_from_json(const Json& j) {
  if (!j.is_object() || j.size() != 1) {
    throw_bad_input("initial condition must be one of {constant}, {polynomial}, {exponential}, {trigonometric}");
  }
  const auto it = j.begin();
  const std::string kind = it.key();
  const Json& body = it.value();
  InitialCondition ic;
  if (kind == "constant") {
    if (!body.is_number()) throw_bad_input("constant initial condition must be a number");
    ic = initial::Constant{body.get<double>()};
  } else if (kind == "polynomial") {
    ic = initial::Polynomial{number_array_field(Json{{"polynomial", body}}, "polynomial")};
  } else if (kind == "exponential") {
    ic = initial::Exponential{number_field(body, "A"), number_field(body, "gamma")};
  } else if (kind == "trigonometric") {
    ic = initial::Trigonometric{number_field(body, "A"), number_field(body, "omega"),
                                number_field(body, "phi")};
  } else {
    throw_bad_input("unknown initial condition family '" + kind + "'");
  }
  validate(ic);
  return ic;
}

std::string roots_csv(const RootSet& roots) {
  std::string out = "k,re,im,multiplicity\n";
  for (const auto& r : roots.roots) {
    out += "0," + full_precision(r.location.real()) + "," + full_precision(r.location.imag()) + "," +
           std::to_string(r.multiplicity) + "\n";
  }
  return out;
}

std::string sweep_csv(const SensitivitySweep& sweep) {
  std::string out = "k,re,im,multiplicity\n";
  for (const auto& [k, set] : sweep.per_k) {
    for (const auto& r : set.roots) {
      out += std::to_string(k) + "," + full_precision(r.location.real()) + "," +
             full_precision(r.location.imag()) + "," + std::to_string(r.multiplicity) + "\n";
    }
  }
  return out;
}

std::string trajectory_csv(const Trajectory& trajectory) {
  std::string out = "t,y\n";
  out.reserve(out.size() + trajectory.t.size() * 48);
  for (std::size_t i = 0; i < trajectory.t.size(); ++i) {
    out += full_precision(trajectory.t[i]) + "," + full_precision(trajectory.y[i]) + "\n";
  }
  return out;
}

std::string contour_csv(const AdmissibilityContour& contour) {
  std::string out = "polyline,s0,tau\n";
  for (std::size_t l = 0; l < contour.polylines.size(); ++l) {
    for (const auto& [s0, tau] : contour.polylines[l]) {
      out += std::to_string(l) + "," + full_precision(s0) + "," + full_precision(tau) + "\n";
    }
  }
  return out;
}

}  // namespace delayplace
