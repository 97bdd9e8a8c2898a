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

#ifndef RIG_ERRORS_H_
#define RIG_ERRORS_H_

#include <stdexcept>
#include <string>

namespace rig {

enum class ErrorCode {
  kInvalidPoint,
  kInvalidCurve,
  kInvalidIsometry,
  kCutLocusAmbiguity,
  kDimensionMismatch,
  kWrongManifold,
  kParseError,
  kQuadratureNotConverged,
  kEigenSolverFailure,
  kInvalidArgument,
};

// Stable identifier used in messages and reports, e.g. "CutLocusAmbiguity".
const char* error_name(ErrorCode code);

// All library failures are reported through this exception. The message is
// prefixed with the error name so callers printing what() name the failing
// invariant.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace rig

#endif  // RIG_ERRORS_H_
