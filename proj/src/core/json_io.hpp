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

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "core/design.hpp"
#include "core/error.hpp"
#include "core/rootfinder.hpp"
#include "core/simulate.hpp"

namespace delayplace {

/// Field order is part of the wire format, hence ordered_json everywhere.
using Json = nlohmann::ordered_json;

/// Trajectories longer than this are decimated in documents.
inline constexpr std::size_t kTransportSamples = 100'000;

Json to_json(const Quasipolynomial& q);
Json to_json(const DesignResult& r);
Json to_json(const std::vector<DesignResult>& results);
Json to_json(const ComplexRectangle& rect);
Json to_json(const RootSet& roots, const std::optional<DominanceReport>& dominance = std::nullopt);
Json to_json(const SensitivitySweep& sweep);
Json to_json(const AdmissibilityContour& contour);
Json to_json(const Trajectory& trajectory);
Json to_json(const Error& error);

/// Parsers throw Error{BadInput} with the offending field named.
Quasipolynomial quasipolynomial_from_json(const Json& j);
ComplexRectangle rectangle_from_json(const Json& j);
InitialCondition initial_condition_from_json(const Json& j);

std::string roots_csv(const RootSet& roots);
std::string sweep_csv(const SensitivitySweep& sweep);
std::string trajectory_csv(const Trajectory& trajectory);
std::string contour_csv(const AdmissibilityContour& contour);

/// Field accessors used by the request parsers.
double number_field(const Json& j, const char* name);
int integer_field(const Json& j, const char* name);
std::vector<double> number_array_field(const Json& j, const char* name);

}  // namespace delayplace
