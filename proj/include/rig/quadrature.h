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

#ifndef RIG_QUADRATURE_H_
#define RIG_QUADRATURE_H_

#include <functional>
#include <vector>

#include "rig/manifold.h"

namespace rig {

enum class QuadratureRule { kGaussLegendre, kTrapezoid };

const char* quadrature_rule_name(QuadratureRule rule);

// Quadrature on [0, 1]. With `refine`, the node count doubles until two
// successive estimates differ by less than tol * max(1, |estimate|) (max
// norm over all entries), failing with QuadratureNotConverged past
// max_nodes.
struct Quadrature {
  QuadratureRule rule = QuadratureRule::kGaussLegendre;
  int nodes = 32;
  bool refine = true;
  double tol = 1e-10;
  int max_nodes = 1024;

  static Quadrature fixed(int nodes,
                          QuadratureRule rule = QuadratureRule::kGaussLegendre);

  // Throws InvalidArgument unless nodes >= 2, tol > 0, max_nodes >= nodes.
  void validate() const;
};

struct QuadratureNodes {
  std::vector<double> t;
  std::vector<double> w;
};

// Nodes and weights of an n-point rule mapped to [0, 1].
QuadratureNodes quadrature_nodes(QuadratureRule rule, int n);

struct QuadratureResult {
  Mat value;
  int nodes = 0;
  // Max-norm change at the final doubling; 0 without refinement.
  double delta = 0.0;
};

// Applies q to a matrix-valued integral. `integrate` receives a node set and
// returns the weighted sum for it, so callers can share per-node work across
// all entries.
QuadratureResult integrate(
    const Quadrature& q,
    const std::function<Mat(const QuadratureNodes&)>& integrate);

double integrate_scalar(const Quadrature& q,
                        const std::function<double(double)>& f,
                        int* nodes_used = nullptr);

}  // namespace rig

#endif  // RIG_QUADRATURE_H_
