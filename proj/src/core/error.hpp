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

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

namespace delayplace {

enum class ErrorCode {
  BadInput,
  SingularSystem,
  NoAdmissiblePoint,
  ContourTooClose,
  RootOnBoundary,
  ConvergenceFailure,
  AssignedRootMissing,
  InvalidPerturbation,
  BlowUp,
  DeadlineExceeded,
  Internal,
};

/// Stable snake_case name used on every external surface (JSON, CLI, HTTP).
std::string_view error_code_name(ErrorCode code);

/// Every failure raised by the core carries one of the codes above plus an
/// optional set of numeric details (e.g. the divergence time of a BlowUp).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::map<std::string, double> details = {})
      : std::runtime_error(message), code_(code), details_(std::move(details)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::map<std::string, double>& details() const noexcept { return details_; }

 private:
  ErrorCode code_;
  std::map<std::string, double> details_;
};

[[noreturn]] void throw_bad_input(const std::string& message);

}  // namespace delayplace
