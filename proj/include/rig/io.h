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

#ifndef RIG_IO_H_
#define RIG_IO_H_

#include <filesystem>
#include <string>
#include <vector>

#include "rig/attribution.h"
#include "rig/harness.h"
#include "rig/manifold.h"

namespace rig {

// Shortest decimal form that parses back to the same double.
std::string format_double(double x);
// Inverse of format_double; also accepts "inf", "-inf" and "nan".
double parse_double(const std::string& text);

// "1.5,-2,3e-4" -> vector. Throws ParseError on malformed input.
Vec parse_number_list(const std::string& text);

// "euclidean(3)", "euclidean:3", "sphere2", "half_plane2" (also "R3",
// "S2", "H2").
ManifoldModel parse_manifold_name(const std::string& name);

// {"kind": "euclidean", "dim": 3, "transport_steps": 256, "bvp_tol": 1e-10,
//  "transport_tol": 1e-9, "max_transport_steps": 4096}; all but "kind"
// optional ("dim" is required for euclidean).
ManifoldModel manifold_from_json(const std::string& document);
std::string manifold_to_json(const ManifoldModel& m);

// Reports in both formats carry every numeric field, written so that
// re-parsing reproduces each double exactly.
std::string report_to_json(const AttributionReport& r);
AttributionReport report_from_json(const std::string& document);

// Long-format table "field,i,j,value", one scalar per row.
std::string report_to_csv(const AttributionReport& r);
AttributionReport report_from_csv(const std::string& document);

// One row per frame direction:
//   index,attribution[,eigenvalue],frame_0,...,frame_{d-1}
// where frame_k are the coordinate components of the i-th frame vector. The
// eigenvalue column is present only for eigenframe reports.
std::string report_to_direction_csv(const AttributionReport& r);

struct HarnessConfig {
  std::vector<AxiomCheckSpec> checks;
  int threads = 1;
};

// {"seed": 5392711, "threads": 2, "checks": [{"axiom": "Completeness",
//  "tolerance": 1e-6, "trials": 20, "seed": 7, "manifold": "sphere2"}]}.
// Missing tolerances fall back to default_tolerance, missing seeds to the
// top-level seed (kDefaultSeed if absent), missing trial counts to 20.
HarnessConfig harness_config_from_json(const std::string& document);
std::string harness_config_to_json(const HarnessConfig& config);

std::string harness_report_to_json(const std::vector<AxiomReport>& reports);
std::vector<AxiomReport> harness_report_from_json(const std::string& document);
// Per-check residual table "index,seed,manifold,field,p,o,residual".
std::string axiom_report_to_csv(const AxiomReport& report);

std::string read_file(const std::filesystem::path& path);
// Writes a sibling temporary file and renames it over `path`, so readers
// never see a partial file.
void write_file_atomic(const std::filesystem::path& path,
                       const std::string& content);

}  // namespace rig

#endif  // RIG_IO_H_
