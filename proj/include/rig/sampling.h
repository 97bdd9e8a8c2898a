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

#ifndef RIG_SAMPLING_H_
#define RIG_SAMPLING_H_

#include <cstdint>
#include <random>

#include "rig/isometry.h"
#include "rig/manifold.h"

namespace rig {

// Seeds used throughout the harness and CLI default to the ASCII bytes of
// "RIG".
inline constexpr std::uint64_t kDefaultSeed = 0x524947;

// Well-mixed per-task seed, so task i of a run seeded with `seed` draws the
// same numbers regardless of scheduling.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

// Euclidean: uniform in [-2, 2]^n. Sphere2: uniform on the sphere.
// HalfPlane2: x uniform in [-2, 2], log y uniform in [-1, 1].
Point random_point(const ManifoldModel& m, std::mt19937_64& rng);

// Gaussian tangent vector at p (coefficients in the orthonormal frame).
TangentVector random_tangent(const ManifoldModel& m, const Point& p,
                             std::mt19937_64& rng);

// Haar-distributed orthogonal matrix; determinant +1 when `proper`.
Mat random_orthogonal(int n, std::mt19937_64& rng, bool proper = false);

// orthonormal_frame(m, p) rotated by a random orthogonal matrix.
OrthonormalFrame random_frame(const ManifoldModel& m, const Point& p,
                              std::mt19937_64& rng);

// Random rigid motion, rotation or Moebius map acting on m.
Isometry random_isometry(const ManifoldModel& m, std::mt19937_64& rng);

}  // namespace rig

#endif  // RIG_SAMPLING_H_
