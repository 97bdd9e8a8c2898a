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

#include "rig/sampling.h"

#include <cmath>

namespace rig {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 finaliser.
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Point random_point(const ManifoldModel& m, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> box(-2.0, 2.0);
  std::uniform_real_distribution<double> log_height(-1.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  switch (m.kind()) {
    case ManifoldKind::kEuclidean: {
      Vec x(m.dim());
      for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = box(rng);
      return {x};
    }
    case ManifoldKind::kSphere2: {
      Vec x(3);
      do {
        for (Eigen::Index i = 0; i < 3; ++i) x[i] = normal(rng);
      } while (x.norm() < 1e-3);
      return {Vec(x / x.norm())};
    }
    case ManifoldKind::kHalfPlane2: {
      Vec x(2);
      x[0] = box(rng);
      x[1] = std::exp(log_height(rng));
      return {x};
    }
  }
  return {};
}

TangentVector random_tangent(const ManifoldModel& m, const Point& p,
                             std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const OrthonormalFrame frame = orthonormal_frame(m, p);
  Vec c(m.dim());
  for (Eigen::Index i = 0; i < c.size(); ++i) c[i] = normal(rng);
  return frame_combination(frame, c);
}

Mat random_orthogonal(int n, std::mt19937_64& rng, bool proper) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Mat a(n, n);
  for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = normal(rng);
  Eigen::HouseholderQR<Mat> qr(a);
  Mat q = qr.householderQ();
  // Sign-correct so the distribution is Haar.
  const Mat r = qr.matrixQR();
  for (int j = 0; j < n; ++j) {
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  if (proper && q.determinant() < 0.0) q.col(0) = -q.col(0);
  return q;
}

OrthonormalFrame random_frame(const ManifoldModel& m, const Point& p,
                              std::mt19937_64& rng) {
  return rotate_frame(orthonormal_frame(m, p), random_orthogonal(m.dim(), rng));
}

Isometry random_isometry(const ManifoldModel& m, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  switch (m.kind()) {
    case ManifoldKind::kEuclidean: {
      Vec b(m.dim());
      for (Eigen::Index i = 0; i < b.size(); ++i) b[i] = 2.0 * unit(rng);
      return Isometry::rigid_motion(random_orthogonal(m.dim(), rng), b);
    }
    case ManifoldKind::kSphere2: {
      const Eigen::Matrix3d r = random_orthogonal(3, rng, true);
      return Isometry::rotation(r);
    }
    case ManifoldKind::kHalfPlane2: {
      const double a = std::exp(0.7 * unit(rng));
      const double b = unit(rng), c = 0.5 * unit(rng);
      return Isometry::mobius(a, b, c, (1.0 + b * c) / a);
    }
  }
  return Isometry::identity();
}

}  // namespace rig
