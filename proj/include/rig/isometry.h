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

#ifndef RIG_ISOMETRY_H_
#define RIG_ISOMETRY_H_

#include <array>

#include "rig/manifold.h"

namespace rig {

// A built-in isometry: Euclidean rigid motion x -> Qx + b, Sphere2 orthogonal
// map x -> Rx, or HalfPlane2 Moebius map z -> (az + b) / (cz + d), ad - bc = 1.
class Isometry {
 public:
  enum class Kind { kIdentity, kRigidMotion, kRotation, kMobius };

  static Isometry identity();
  // Throws InvalidIsometry unless Q is orthogonal to 1e-10.
  static Isometry rigid_motion(const Mat& Q, const Vec& translation);
  // Linear map exchanging axes i and j of R^n.
  static Isometry coordinate_swap(int n, int i, int j);
  // Throws InvalidIsometry unless R is orthogonal to 1e-10.
  static Isometry rotation(const Eigen::Matrix3d& R);
  // Throws InvalidIsometry unless |ad - bc - 1| <= 1e-12.
  static Isometry mobius(double a, double b, double c, double d);

  Isometry inverse() const;

  Kind kind() const { return kind_; }
  const Mat& matrix() const { return matrix_; }
  const Vec& translation() const { return translation_; }
  const std::array<double, 4>& mobius_coefficients() const { return mobius_; }

 private:
  Kind kind_ = Kind::kIdentity;
  Mat matrix_;
  Vec translation_;
  std::array<double, 4> mobius_{1.0, 0.0, 0.0, 1.0};
};

// Throws InvalidIsometry if iso does not act on m.
void check_isometry(const ManifoldModel& m, const Isometry& iso);

Point apply_isometry(const ManifoldModel& m, const Isometry& iso,
                     const Point& p);

// ds_p(u) for u based at p; the result is based at s(p).
TangentVector differential_of_isometry(const ManifoldModel& m,
                                       const Isometry& iso,
                                       const TangentVector& u);

}  // namespace rig

#endif  // RIG_ISOMETRY_H_
