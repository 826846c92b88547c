/* Copyright 2026 The ARES Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    https://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "ares/core/errors.h"

namespace ares {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kParse: return "ParseError";
    case ErrorCode::kValidation: return "ValidationError";
    case ErrorCode::kIo: return "IoError";
    case ErrorCode::kTimeout: return "Timeout";
    case ErrorCode::kUnreachable: return "Unreachable";
    case ErrorCode::kMalformedResponse: return "MalformedResponse";
    case ErrorCode::kMalformedVerdict: return "MalformedVerdict";
    case ErrorCode::kRationaleEmpty: return "RationaleEmpty";
    case ErrorCode::kTemplateMissing: return "TemplateMissing";
    case ErrorCode::kFormatViolation: return "FormatViolation";
    case ErrorCode::kOracleMiss: return "OracleMiss";
    case ErrorCode::kNoSuccess: return "NoSuccess";
    case ErrorCode::kUnparseableToolCall: return "UnparseableToolCall";
    case ErrorCode::kStepAnnotationFailed: return "StepAnnotationFailed";
    case ErrorCode::kStepOutOfRange: return "StepOutOfRange";
    case ErrorCode::kNoSuccessfulAssignment: return "NoSuccessfulAssignment";
    case ErrorCode::kGroupTooSmall: return "GroupTooSmall";
    case ErrorCode::kInconsistentRolloutCount: return "InconsistentRolloutCount";
    case ErrorCode::kInfrastructure: return "InfrastructureFailure";
    case ErrorCode::kConfigInvalid: return "ConfigInvalid";
    case ErrorCode::kMissingInput: return "MissingInput";
  }
  return "Unknown";
}

}  // namespace ares
