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

#ifndef RIG_CLI_H_
#define RIG_CLI_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rig/attribution.h"
#include "rig/errors.h"
#include "rig/sampling.h"

namespace rig {

// Exit codes of the `rig` tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // config errors, failed checks
inline constexpr int kExitCutLocus = 2;
inline constexpr int kExitQuadrature = 3;

int exit_code_for(ErrorCode code);

// One attribution job, as given by flags or by an entry of a batch file.
struct JobConfig {
  std::string manifold;
  // height, log_y, constant:C, coordinate:K, gaussian:SIGMA:C1,C2,...,
  // random-mlp, or mlp (with `weights`).
  std::string field;
  std::string weights;
  std::string p;
  std::string o;
  // default | eigen | explicit.
  std::string frame = "default";
  // Explicit frame vectors "a,b;c,d".
  std::string frame_vectors;
  int quadrature_nodes = 0;  // 0 keeps the default
  int quadrature_max_nodes = 0;  // 0 keeps the default
  std::string quadrature_rule = "gauss-legendre";
  bool fixed_quadrature = false;
  int transport_steps = 0;  // 0 keeps the default
  std::uint64_t seed = kDefaultSeed;
  std::string method = "RIG";
  std::string out;
  std::string format = "json";
};

// Builds and runs the job. Throws rig::Error.
AttributionReport run_attribution_job(const JobConfig& job);

// Runs the tool on argv-style arguments (without the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace rig

#endif  // RIG_CLI_H_
