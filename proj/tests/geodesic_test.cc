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

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "rig/curve.h"
#include "rig/sampling.h"

namespace rig {
namespace {

const ManifoldModel kSphere = ManifoldModel::sphere2();
const ManifoldModel kHalfPlane = ManifoldModel::half_plane2();

Point pt(double x, double y) { return {Vec(Eigen::Vector2d(x, y))}; }
Point pt(double x, double y, double z) { return {Vec(Eigen::Vector3d(x, y, z))}; }

std::vector<ManifoldModel> families() {
  return {ManifoldModel::euclidean(3), kSphere, kHalfPlane};
}

TEST(GeodesicTest, HalfPlaneSemicircle) {
  // The geodesic between (-1, 1) and (1, 1) is the arc x^2 + y^2 = 2.
  const Curve c = geodesic_between(kHalfPlane, pt(-1, 1), pt(1, 1));
  for (int i = 0; i <= 20; ++i) {
    const Vec x = c.position(i / 20.0).coords;
    EXPECT_NEAR(x.squaredNorm(), 2.0, 1e-13);
  }
  EXPECT_NEAR(c.position(0.5).coords[0], 0.0, 1e-14);
  EXPECT_NEAR(c.position(0.5).coords[1], std::sqrt(2.0), 1e-14);
}

TEST(GeodesicTest, HalfPlaneVerticalLine) {
  const Curve c = geodesic_between(kHalfPlane, pt(0.3, 1), pt(0.3, std::exp(2.0)));
  for (int i = 0; i <= 10; ++i) {
    const double t = i / 10.0;
    EXPECT_NEAR(c.position(t).coords[0], 0.3, 1e-14);
    EXPECT_NEAR(c.position(t).coords[1], std::exp(2.0 * t), 1e-12);
  }
}

TEST(GeodesicTest, SphereGreatCircle) {
  const Curve c = geodesic_between(kSphere, pt(0, 0, 1), pt(1, 0, 0));
  const double t = 0.3;
  const Vec x = c.position(t).coords;
  EXPECT_NEAR(x[0], std::sin(t * std::numbers::pi / 2), 1e-15);
  EXPECT_NEAR(x[2], std::cos(t * std::numbers::pi / 2), 1e-15);
  EXPECT_NEAR(x[1], 0.0, 1e-15);
}

TEST(GeodesicTest, EndpointsAreExact) {
  std::mt19937_64 rng(1);
  for (const ManifoldModel& m : families()) {
    for (int trial = 0; trial < 20; ++trial) {
      const Point p = random_point(m, rng), o = random_point(m, rng);
      const Curve c = geodesic_between(m, p, o);
      EXPECT_EQ(c.start().coords, p.coords);
      EXPECT_EQ(c.end().coords, o.coords);
      EXPECT_LE((c.position(1.0).coords - o.coords).norm(), 1e-12);
      EXPECT_LE((c.position(0.0).coords - p.coords).norm(), 1e-14);
      EXPECT_TRUE(c.is_geodesic());
    }
  }
}

TEST(GeodesicTest, SatisfiesGeodesicEquation) {
  std::mt19937_64 rng(2);
  for (const ManifoldModel& m : families()) {
    for (int trial = 0; trial < 20; ++trial) {
      const Curve c = geodesic_between(m, random_point(m, rng), random_point(m, rng));
      for (double t : {0.1, 0.37, 0.5, 0.81}) {
        EXPECT_LE(geodesic_residual(c, t), 1e-6) << m.name();
      }
    }
  }
}

TEST(GeodesicTest, ConstantSpeedEqualToDistance) {
  std::mt19937_64 rng(3);
  for (const ManifoldModel& m : families()) {
    for (int trial = 0; trial < 20; ++trial) {
      const Point p = random_point(m, rng), o = random_point(m, rng);
      const Curve c = geodesic_between(m, p, o);
      const double d = distance(m, p, o);
      for (int i = 0; i <= 8; ++i) {
        EXPECT_NEAR(norm(m, c.velocity(i / 8.0)), d, 1e-10 * std::max(1.0, d));
      }
      EXPECT_NEAR(curve_length(c), d, 1e-10 * std::max(1.0, d));
    }
  }
}

TEST(GeodesicTest, VelocityMatchesFiniteDifferences) {
  std::mt19937_64 rng(4);
  for (const ManifoldModel& m : families()) {
    const Curve c = geodesic_between(m, random_point(m, rng), random_point(m, rng));
    const double h = 1e-6, t = 0.4;
    const Vec fd = (c.position(t + h).coords - c.position(t - h).coords) / (2 * h);
    EXPECT_LE((fd - c.velocity(t).components).norm(), 1e-7) << m.name();
  }
}

TEST(GeodesicTest, MatchesShootingSolver) {
  std::mt19937_64 rng(5);
  for (const ManifoldModel& m : families()) {
    for (int trial = 0; trial < 10; ++trial) {
      const Point p = random_point(m, rng), o = random_point(m, rng);
      const ShootingResult shot = shoot_geodesic(m, p, o);
      ASSERT_LE(shot.residual, 1e-8) << m.name();
      const TangentVector v = log_map(m, p, o);
      EXPECT_LE((shot.initial_velocity.components - v.components).norm(),
                1e-6 * std::max(1.0, v.components.norm()))
          << m.name();
    }
  }
}

TEST(GeodesicTest, EqualEndpointsGiveConstantCurve) {
  const Point p = pt(0.5, 2.0);
  const Curve c = geodesic_between(kHalfPlane, p, p);
  EXPECT_TRUE(c.is_constant());
  EXPECT_EQ(c.velocity(0.3).components.norm(), 0.0);
  EXPECT_EQ(c.position(0.7).coords, p.coords);
}

TEST(GeodesicTest, AntipodalPairIsRefused) {
  try {
    geodesic_between(kSphere, pt(1, 0, 0), pt(-1, 0, 0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCutLocusAmbiguity);
  }
}

TEST(GeodesicTest, ReparametrizationKeepsTraceLosesFlag) {
  const Curve c = geodesic_between(kHalfPlane, pt(-1, 1), pt(1, 1));
  const Curve r = reparametrize(c, [](double t) { return t * t; },
                                [](double t) { return 2 * t; });
  EXPECT_FALSE(r.is_geodesic());
  EXPECT_LE((r.position(0.5).coords - c.position(0.25).coords).norm(), 1e-15);
  EXPECT_LE((r.velocity(0.5).components - c.velocity(0.25).components).norm(),
            1e-15);
  EXPECT_NEAR(curve_length(r), curve_length(c), 1e-12);
  EXPECT_GT(geodesic_residual(r, 0.5), 1e-3);
}

}  // namespace
}  // namespace rig
