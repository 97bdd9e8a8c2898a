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

#ifndef RIG_SCALAR_FIELD_H_
#define RIG_SCALAR_FIELD_H_

#include <memory>
#include <string>

#include "rig/isometry.h"
#include "rig/manifold.h"
#include "rig/mlp.h"

namespace rig {

// A smooth function F: M -> R with an exact Riemannian gradient. Fields on
// Sphere2 are defined on ambient R^3 and restricted; their gradient is the
// tangential projection of the ambient gradient. Immutable and cheap to copy.
class ScalarField {
 public:
  static ScalarField constant(const ManifoldModel& m, double c);
  static ScalarField coordinate(const ManifoldModel& m, int index);
  // <w, x> + b on the coordinate (ambient for Sphere2) representation.
  static ScalarField affine(const ManifoldModel& m, const Vec& w, double b);
  // z on Sphere2.
  static ScalarField sphere_height();
  // log(y) on HalfPlane2.
  static ScalarField log_y();
  // exp(-dist(p, center)^2 / sigma^2) with the manifold distance.
  static ScalarField gaussian_bump(const ManifoldModel& m, const Point& center,
                                   double sigma);
  // Throws DimensionMismatch unless w.input_dim == m.coord_dim().
  static ScalarField mlp(const ManifoldModel& m, MlpWeights w);
  // a F + b G; throws DimensionMismatch if the manifolds differ.
  static ScalarField linear_combination(double a, const ScalarField& f,
                                        double b, const ScalarField& g);
  // F o s.
  static ScalarField compose(const ScalarField& f, const Isometry& s);

  const ManifoldModel& manifold() const;
  double value(const Point& p) const;
  TangentVector gradient(const Point& p) const;
  // dF(u) = g(grad F, u).
  double differential(const TangentVector& u) const;
  std::string description() const;
  // Weights when this field is a plain MLP, else nullptr.
  const MlpWeights* mlp_weights() const;

  struct Node;

 private:
  explicit ScalarField(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

double eval(const ScalarField& f, const Point& p);
TangentVector gradient(const ScalarField& f, const Point& p);
ScalarField linear_combination(double a, const ScalarField& f, double b,
                               const ScalarField& g);

// Parses a weights document into an MLP field on m.
ScalarField mlp_from_document(const ManifoldModel& m,
                              const std::string& document);

// Central difference (F(exp(h u)) - F(exp(-h u))) / 2h along geodesic rays.
// Approximates dF(u) without touching the gradient code path.
double ray_derivative(const ScalarField& f, const TangentVector& u, double h);

}  // namespace rig

#endif  // RIG_SCALAR_FIELD_H_
