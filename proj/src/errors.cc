// Copyright 2026 The RIG Authors.
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

#include "rig/errors.h"

namespace rig {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidPoint:
      return "InvalidPoint";
    case ErrorCode::kInvalidCurve:
      return "InvalidCurve";
    case ErrorCode::kInvalidIsometry:
      return "InvalidIsometry";
    case ErrorCode::kCutLocusAmbiguity:
      return "CutLocusAmbiguity";
    case ErrorCode::kDimensionMismatch:
      return "DimensionMismatch";
    case ErrorCode::kWrongManifold:
      return "WrongManifold";
    case ErrorCode::kParseError:
      return "ParseError";
    case ErrorCode::kQuadratureNotConverged:
      return "QuadratureNotConverged";
    case ErrorCode::kEigenSolverFailure:
      return "EigenSolverFailure";
    case ErrorCode::kInvalidArgument:
      return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(error_name(code)) + ": " + message),
      code_(code) {}

}  // namespace rig
