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
#include "core/error.hpp"

namespace delayplace {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::BadInput: return "bad_input";
    case ErrorCode::SingularSystem: return "singular_system";
    case ErrorCode::NoAdmissiblePoint: return "no_admissible_point";
    case ErrorCode::ContourTooClose: return "contour_too_close";
    case ErrorCode::RootOnBoundary: return "root_on_boundary";
    case ErrorCode::ConvergenceFailure: return "convergence_failure";
    case ErrorCode::AssignedRootMissing: return "assigned_root_missing";
    case ErrorCode::InvalidPerturbation: return "invalid_perturbation";
    case ErrorCode::BlowUp: return "blow_up";
    case ErrorCode::DeadlineExceeded: return "deadline_exceeded";
    case ErrorCode::Internal: return "internal";
  }
  return "internal";
}

void throw_bad_input(const std::string& message) {
  throw Error(ErrorCode::BadInput, message);
}

}  // namespace delayplace
