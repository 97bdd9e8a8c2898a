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

#ifndef RIG_HARNESS_H_
#define RIG_HARNESS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rig/manifold.h"
#include "rig/sampling.h"

namespace rig {

enum class AxiomKind {
  kImplementation,
  kLinearity,
  kSensitivity,
  kSymmetryInvariance,
  kCompleteness,
  kIsometryInvariance,
  kEuclideanRestriction,
  kEigenBound,
};

// "Implementation", "Linearity", ... as used in config documents.
const char* axiom_name(AxiomKind axiom);
// Throws ParseError for unknown names.
AxiomKind parse_axiom(const std::string& name);

struct AxiomCheckSpec {
  AxiomKind axiom = AxiomKind::kCompleteness;
  double tolerance = 1e-6;
  int trials = 20;
  std::uint64_t seed = kDefaultSeed;
  // Restricts the trials to one manifold family; all applicable ones cycle
  // otherwise.
  std::optional<ManifoldKind> manifold;

  // Throws InvalidArgument unless tolerance > 0 and trials >= 1.
  void validate() const;
};

// What a single trial ran on, enough to reproduce it by hand.
struct TrialRecord {
  int index = 0;
  std::uint64_t seed = 0;
  std::string manifold;
  std::string field;
  std::vector<double> p;
  std::vector<double> o;
  double residual = 0.0;
};

struct AxiomReport {
  AxiomCheckSpec spec;
  std::vector<TrialRecord> trials;
  // Trials abandoned because the pair hit the cut locus. They are retried
  // with fresh draws and never count towards `trials`.
  int aborted = 0;
  double max_residual = 0.0;
  // True iff spec.trials trials completed and max_residual <= tolerance.
  bool pass = false;
  std::string notes;
};

// Built-in tolerance for an axiom, optionally on one manifold family.
double default_tolerance(AxiomKind axiom,
                         std::optional<ManifoldKind> manifold = std::nullopt);

// Axiom I on constructed equivalent pairs: hidden-unit permutations and an
// inserted identity layer.
AxiomReport check_implementation_invariance(const AxiomCheckSpec& spec);
// A(aF + bG) against a A(F) + b A(G) for random a, b in [-2, 2].
AxiomReport check_linearity(const AxiomCheckSpec& spec);
// Attributions along directions in which F is constant along the whole
// path: an MLP ignoring one input (Euclidean), a function of z with p, o on
// one meridian and u = d/dphi (Sphere2), a function of y with p, o on one
// vertical line and u = d/dx (HalfPlane2).
AxiomReport check_sensitivity(const AxiomCheckSpec& spec);
// Euclidean only: F = G + G o s_ij and an s_ij-fixed base-point; compares
// A_i(x) with A_j(s_ij x).
AxiomReport check_symmetry_invariance(const AxiomCheckSpec& spec);
// |sum_i A_i - (F(p) - F(o))| for analytic and MLP fields.
AxiomReport check_completeness(const AxiomCheckSpec& spec);
// Entrywise alpha(F, p, U) - alpha(F o s^-1, s(p), ds U).
AxiomReport check_isometry_invariance(const AxiomCheckSpec& spec);
// max per-direction |RIG - IG| on random Euclidean MLPs and bases.
AxiomReport check_euclidean_restriction(const AxiomCheckSpec& spec);
// Eigenframe re-evaluation against the eigenvalues, and the excess of
// |alpha(u, u)| over |lambda_n| on 10^4 random unit directions.
AxiomReport check_eigen_bound(const AxiomCheckSpec& spec);

AxiomReport run_check(const AxiomCheckSpec& spec);

// The suite run by `rig verify` without a config.
std::vector<AxiomCheckSpec> default_suite(std::uint64_t seed = kDefaultSeed);

// Runs the checks, `threads` at a time. Reports come back in spec order
// whatever the scheduling.
std::vector<AxiomReport> run_suite(const std::vector<AxiomCheckSpec>& specs,
                                   int threads = 1);

}  // namespace rig

#endif  // RIG_HARNESS_H_
