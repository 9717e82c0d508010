// Copyright 2026 The pointcasimir Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "casimir/errors.hpp"

namespace casimir {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Config: return "ConfigError";
    case ErrorKind::Domain: return "DomainError";
    case ErrorKind::NonIdenticalStrengths: return "NonIdenticalStrengths";
    case ErrorKind::Inadmissible: return "Inadmissible";
    case ErrorKind::SingularMatrix: return "SingularMatrix";
    case ErrorKind::InconsistentDensity: return "InconsistentDensity";
    case ErrorKind::MaxSubdivisions: return "MaxSubdivisions";
    case ErrorKind::RotationInvalid: return "RotationInvalid";
    case ErrorKind::StripViolation: return "StripViolation";
    case ErrorKind::PoleProximity: return "PoleProximity";
    case ErrorKind::TruncationInsufficient: return "TruncationInsufficient";
    case ErrorKind::TailBoundUnreachable: return "TailBoundUnreachable";
    case ErrorKind::PathBudgetExceeded: return "PathBudgetExceeded";
    case ErrorKind::ZeroInteraction: return "ZeroInteraction";
    case ErrorKind::StepWouldViolateAdmissibility: return "StepWouldViolateAdmissibility";
  }
  return "Error";
}

}  // namespace casimir
