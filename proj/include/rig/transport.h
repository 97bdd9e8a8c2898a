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

#ifndef RIG_TRANSPORT_H_
#define RIG_TRANSPORT_H_

#include <span>
#include <string>
#include <vector>

#include "rig/curve.h"
#include "rig/manifold.h"

namespace rig {

enum class TransportMode {
  kAuto,
  // Euclidean space: transport is the identity on components.
  kIdentity,
  // Geodesics on 2-manifolds: decomposition along (velocity, normal).
  kClosedForm,
  // RK4 on the transport equation in a working chart.
  kOde,
};

const char* transport_mode_name(TransportMode mode);

struct TransportOptions {
  TransportMode mode = TransportMode::kAuto;
  // RK4 steps; 0 means the manifold's NumericParams::transport_steps.
  int steps = 0;
  // Double the step count until converged (see NumericParams).
  bool refine = true;
};

struct TransportResult {
  std::vector<TangentVector> vectors;
  TransportMode mode = TransportMode::kIdentity;
  int steps = 0;
  // Max component change at the last doubling (ODE with refinement only).
  double last_delta = 0.0;
};

// Parallel transport of every vector in `u` (all based at c(0)) to c(t).
// kAuto picks identity on Euclidean space, the closed form on geodesics and
// the ODE otherwise. Throws InvalidCurve if the velocity is not finite, if a
// closed form is requested on something that is not a non-constant geodesic
// of a 2-manifold, or if no Sphere2 chart keeps clear of the curve.
TransportResult transport_vectors(const Curve& c,
                                  std::span<const TangentVector> u, double t,
                                  const TransportOptions& options = {});

TangentVector parallel_transport(const Curve& c, const TangentVector& u,
                                 double t,
                                 const TransportOptions& options = {});

// Sphere2 chart whose polar axis keeps at least 0.1 rad from c on [0, t_end];
// identity chart elsewhere. Throws InvalidCurve if none is found.
WorkingChart chart_for_curve(const Curve& c, double t_end);

}  // namespace rig

#endif  // RIG_TRANSPORT_H_
