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

#include "rig/isometry.h"

#include <cmath>
#include <complex>
#include <string>

namespace rig {
namespace {

constexpr double kOrthogonalityTol = 1e-10;
constexpr double kDeterminantTol = 1e-12;

using Complex = std::complex<double>;

void require_orthogonal(const Mat& Q) {
  if (Q.rows() != Q.cols() || Q.rows() == 0) {
    throw Error(ErrorCode::kInvalidIsometry, "matrix must be square");
  }
  const double defect =
      (Q.transpose() * Q - Mat::Identity(Q.rows(), Q.cols())).cwiseAbs().maxCoeff();
  if (!(defect <= kOrthogonalityTol)) {
    throw Error(ErrorCode::kInvalidIsometry,
                "matrix is not orthogonal (max |Q^T Q - I| = " +
                    std::to_string(defect) + ")");
  }
}

Complex mobius_apply(const std::array<double, 4>& k, Complex z) {
  return (k[0] * z + k[1]) / (k[2] * z + k[3]);
}

Complex mobius_derivative(const std::array<double, 4>& k, Complex z) {
  const Complex den = k[2] * z + k[3];
  return 1.0 / (den * den);
}

}  // namespace

Isometry Isometry::identity() { return Isometry(); }

Isometry Isometry::rigid_motion(const Mat& Q, const Vec& translation) {
  require_orthogonal(Q);
  if (translation.size() != Q.rows()) {
    throw Error(ErrorCode::kInvalidIsometry,
                "translation size does not match the orthogonal part");
  }
  Isometry iso;
  iso.kind_ = Kind::kRigidMotion;
  iso.matrix_ = Q;
  iso.translation_ = translation;
  return iso;
}

Isometry Isometry::coordinate_swap(int n, int i, int j) {
  if (i < 0 || j < 0 || i >= n || j >= n) {
    throw Error(ErrorCode::kInvalidIsometry, "swap indices out of range");
  }
  Mat Q = Mat::Identity(n, n);
  Q.row(i).swap(Q.row(j));
  return rigid_motion(Q, Vec::Zero(n));
}

Isometry Isometry::rotation(const Eigen::Matrix3d& R) {
  require_orthogonal(R);
  Isometry iso;
  iso.kind_ = Kind::kRotation;
  iso.matrix_ = R;
  iso.translation_ = Vec::Zero(3);
  return iso;
}

Isometry Isometry::mobius(double a, double b, double c, double d) {
  const double det = a * d - b * c;
  if (!(std::abs(det - 1.0) <= kDeterminantTol)) {
    throw Error(ErrorCode::kInvalidIsometry,
                "Moebius coefficients need ad - bc = 1, got " +
                    std::to_string(det));
  }
  Isometry iso;
  iso.kind_ = Kind::kMobius;
  iso.mobius_ = {a, b, c, d};
  return iso;
}

Isometry Isometry::inverse() const {
  switch (kind_) {
    case Kind::kIdentity:
      return *this;
    case Kind::kRigidMotion: {
      Isometry iso = *this;
      iso.matrix_ = matrix_.transpose();
      iso.translation_ = -(matrix_.transpose() * translation_);
      return iso;
    }
    case Kind::kRotation: {
      Isometry iso = *this;
      iso.matrix_ = matrix_.transpose();
      return iso;
    }
    case Kind::kMobius: {
      Isometry iso = *this;
      iso.mobius_ = {mobius_[3], -mobius_[1], -mobius_[2], mobius_[0]};
      return iso;
    }
  }
  return *this;
}

void check_isometry(const ManifoldModel& m, const Isometry& iso) {
  switch (iso.kind()) {
    case Isometry::Kind::kIdentity:
      return;
    case Isometry::Kind::kRigidMotion:
      if (m.kind() != ManifoldKind::kEuclidean ||
          iso.matrix().rows() != m.dim()) {
        throw Error(ErrorCode::kInvalidIsometry,
                    "rigid motion does not act on " + m.name());
      }
      return;
    case Isometry::Kind::kRotation:
      if (m.kind() != ManifoldKind::kSphere2) {
        throw Error(ErrorCode::kInvalidIsometry,
                    "rotation does not act on " + m.name());
      }
      return;
    case Isometry::Kind::kMobius:
      if (m.kind() != ManifoldKind::kHalfPlane2) {
        throw Error(ErrorCode::kInvalidIsometry,
                    "Moebius map does not act on " + m.name());
      }
      return;
  }
}

Point apply_isometry(const ManifoldModel& m, const Isometry& iso,
                     const Point& p) {
  check_isometry(m, iso);
  check_point(m, p);
  switch (iso.kind()) {
    case Isometry::Kind::kIdentity:
      return p;
    case Isometry::Kind::kRigidMotion:
      return {Vec(iso.matrix() * p.coords + iso.translation())};
    case Isometry::Kind::kRotation: {
      Vec q = iso.matrix() * p.coords;
      return {Vec(q / q.norm())};
    }
    case Isometry::Kind::kMobius: {
      const Complex w =
          mobius_apply(iso.mobius_coefficients(), {p.coords[0], p.coords[1]});
      Vec q(2);
      q << w.real(), w.imag();
      return {q};
    }
  }
  return p;
}

TangentVector differential_of_isometry(const ManifoldModel& m,
                                       const Isometry& iso,
                                       const TangentVector& u) {
  check_tangent(m, u);
  const Point image = apply_isometry(m, iso, u.base);
  switch (iso.kind()) {
    case Isometry::Kind::kIdentity:
      return {image, u.components};
    case Isometry::Kind::kRigidMotion:
      return {image, Vec(iso.matrix() * u.components)};
    case Isometry::Kind::kRotation:
      return make_tangent(m, image, iso.matrix() * u.components);
    case Isometry::Kind::kMobius: {
      const Complex dw =
          mobius_derivative(iso.mobius_coefficients(),
                            {u.base.coords[0], u.base.coords[1]}) *
          Complex(u.components[0], u.components[1]);
      Vec v(2);
      v << dw.real(), dw.imag();
      return {image, v};
    }
  }
  return {image, u.components};
}

}  // namespace rig
