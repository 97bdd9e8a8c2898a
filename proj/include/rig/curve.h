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

#ifndef RIG_CURVE_H_
#define RIG_CURVE_H_

#include <functional>

#include "rig/manifold.h"

namespace rig {

// A smooth path t in [0, 1] -> M. Position and velocity are evaluated in the
// manifold's coordinate representation. Curves run from the point being
// explained, position(0), to the base-point, position(1).
class Curve {
 public:
  using Evaluator = std::function<Vec(double)>;

  // Endpoints are taken from position(0) and position(1).
  Curve(ManifoldModel m, Evaluator position, Evaluator velocity,
        bool is_geodesic);
  // Endpoints are stored as given; the evaluators must reproduce them.
  Curve(ManifoldModel m, Evaluator position, Evaluator velocity,
        bool is_geodesic, Point start, Point end);

  // The constant curve at p; its velocity is identically zero.
  static Curve constant(ManifoldModel m, const Point& p);

  const ManifoldModel& manifold() const { return m_; }
  Point position(double t) const;
  TangentVector velocity(double t) const;

  const Point& start() const { return start_; }
  const Point& end() const { return end_; }
  bool is_geodesic() const { return is_geodesic_; }
  bool is_constant() const { return is_constant_; }

 private:
  ManifoldModel m_;
  Evaluator position_;
  Evaluator velocity_;
  Point start_;
  Point end_;
  bool is_geodesic_ = false;
  bool is_constant_ = false;
};

// Length-minimising constant-speed geodesic with position(0) = p and
// position(1) = o, in closed form for every built-in manifold.
// Throws CutLocusAmbiguity when the minimiser is not unique.
Curve geodesic_between(const ManifoldModel& m, const Point& p,
                       const Point& o);

// t -> c(phi(t)) with velocity dphi(t) c'(phi(t)). phi must map [0, 1] onto
// [0, 1] with phi(0) = 0 and phi(1) = 1. The result is never flagged as a
// geodesic.
Curve reparametrize(const Curve& c, std::function<double(double)> phi,
                    std::function<double(double)> dphi);

// Riemannian length by Gauss-Legendre quadrature of the speed.
double curve_length(const Curve& c, int nodes = 64);

// || x'' + Gamma(x', x') || in the chart of christoffel_at(c(t)), with x''
// from central differences of the velocity. Small iff c is a geodesic at t.
double geodesic_residual(const Curve& c, double t);

struct ShootingResult {
  TangentVector initial_velocity;
  int iterations = 0;
  double residual = 0.0;
};

// Generic boundary-value solver: Newton iteration on the chart endpoint
// mismatch of an RK4-integrated geodesic, starting from the chart secant.
// Independent of the closed forms; used to cross-check them.
ShootingResult shoot_geodesic(const ManifoldModel& m, const Point& p,
                              const Point& o, int steps = 200,
                              int max_iterations = 50);

}  // namespace rig

#endif  // RIG_CURVE_H_
