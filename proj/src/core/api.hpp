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

#include <string>
#include <string_view>

#include "core/error.hpp"

namespace delayplace {

enum class OutputFormat { Json, Csv };

/// Raised when the request body is not JSON at all. Carries BadInput so the
/// code stays bad_input on the wire; the transport maps it to 400.
class MalformedRequest : public Error {
 public:
  explicit MalformedRequest(const std::string& message) : Error(ErrorCode::BadInput, message) {}
};

/// Operation names accepted by execute().
inline constexpr std::string_view kOperations[] = {
    "generic-mid", "generic-crrid", "control-mid", "admissibility", "roots",
    "sensitivity", "simulate",      "report",
};

bool is_operation(std::string_view operation);

/// Runs one operation on a JSON request body and returns the serialized
/// document. Every failure is an Error. Any request may carry "deadline_ms".
std::string execute(std::string_view operation, std::string_view request,
                    OutputFormat format = OutputFormat::Json);

/// Grid resolution used by "admissibility" when the request omits "grid".
void set_default_grid(int s0_samples, int tau_samples);

/// {"status":"ok","version":...,"build":{...}}
std::string health_document();

/// Serialized ApiError body for an Error.
std::string error_document(const Error& error);

}  // namespace delayplace
