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
#include "rig/transport.h"

namespace rig {
namespace {

const ManifoldModel kSphere = ManifoldModel::sphere2();
const ManifoldModel kHalfPlane = ManifoldModel::half_plane2();

TransportOptions ode(int steps, bool refine = false) {
  TransportOptions o;
  o.mode = TransportMode::kOde;
  o.steps = steps;
  o.refine = refine;
  return o;
}

TransportOptions closed_form() {
  TransportOptions o;
  o.mode = TransportMode::kClosedForm;
  return o;
}

// Latitude circle at polar angle theta0, traversed once.
Curve latitude_loop(double theta0) {
  const double two_pi = 2.0 * std::numbers::pi;
  const double s = std::sin(theta0), z = std::cos(theta0);
  return Curve(
      kSphere,
      [=](double t) {
        return Vec(Eigen::Vector3d(s * std::cos(two_pi * t),
                                   s * std::sin(two_pi * t), z));
      },
      [=](double t) {
        return Vec(Eigen::Vector3d(-two_pi * s * std::sin(two_pi * t),
                                   two_pi * s * std::cos(two_pi * t), 0.0));
      },
      false);
}

// Transport of e_phi around the latitude circle, solved by hand in the
// moving (e_theta, e_phi) basis: the coefficients rotate at rate
// 2 pi cos(theta0).
Vec latitude_transport(double theta0, double t) {
  const double phi = 2.0 * std::numbers::pi * t;
  const double psi = phi * std::cos(theta0);
  const Eigen::Vector3d e_theta(std::cos(theta0) * std::cos(phi),
                                std::cos(theta0) * std::sin(phi),
                                -std::sin(theta0));
  const Eigen::Vector3d e_phi(-std::sin(phi), std::cos(phi), 0.0);
  return std::sin(psi) * e_theta + std::cos(psi) * e_phi;
}

double holonomy_angle(double theta0) {
  const Curve loop = latitude_loop(theta0);
  const Point p = loop.start();
  const TangentVector u{p, Vec(Eigen::Vector3d(0, 1, 0))};
  const TangentVector back = parallel_transport(loop, u, 1.0, ode(256, true));
  const Vec normal =
      Eigen::Vector3d(p.coords).cross(Eigen::Vector3d(u.components));
  return std::atan2(normal.dot(back.components), u.components.dot(back.components));
}

TEST(TransportTest, LatitudeHolonomyAtSixtyDegrees) {
  // Enclosed cap area 2 pi (1 - cos theta0) = pi.
  const double expected = 2.0 * std::numbers::pi * (1.0 - std::cos(std::numbers::pi / 3));
  EXPECT_NEAR(std::abs(holonomy_angle(std::numbers::pi / 3)), expected, 1e-4);
}

TEST(TransportTest, LatitudeHolonomyAtOtherLatitudes) {
  for (double theta0 : {0.3, std::numbers::pi / 4, 1.2}) {
    const double area = 2.0 * std::numbers::pi * (1.0 - std::cos(theta0));
    // A loop around the north pole rotates vectors by the cap area.
    EXPECT_NEAR(std::remainder(holonomy_angle(theta0) - area,
                               2.0 * std::numbers::pi),
                0.0, 1e-4)
        << theta0;
  }
}

TEST(TransportTest, EuclideanIsIdentity) {
  const ManifoldModel m = ManifoldModel::euclidean(3);
  std::mt19937_64 rng(1);
  const Curve c = geodesic_between(m, random_point(m, rng), random_point(m, rng));
  const TangentVector u = random_tangent(m, c.start(), rng);
  const TransportResult r = transport_vectors(c, std::span(&u, 1), 0.7);
  EXPECT_EQ(r.mode, TransportMode::kIdentity);
  EXPECT_EQ(r.vectors[0].components, u.components);
  EXPECT_EQ(r.vectors[0].base.coords, c.position(0.7).coords);
}

TEST(TransportTest, AutoModeSelection) {
  std::mt19937_64 rng(2);
  const Curve g = geodesic_between(kSphere, random_point(kSphere, rng),
                                   random_point(kSphere, rng));
  const TangentVector u = random_tangent(kSphere, g.start(), rng);
  EXPECT_EQ(transport_vectors(g, std::span(&u, 1), 0.5).mode,
            TransportMode::kClosedForm);
  const Curve loop = latitude_loop(1.0);
  const TangentVector w{loop.start(), Vec(Eigen::Vector3d(0, 1, 0))};
  EXPECT_EQ(transport_vectors(loop, std::span(&w, 1), 0.5).mode,
            TransportMode::kOde);
}

TEST(TransportTest, TimeZeroAndConstantCurvesAreIdentity) {
  std::mt19937_64 rng(3);
  const Point p = random_point(kHalfPlane, rng);
  const TangentVector u = random_tangent(kHalfPlane, p, rng);
  const Curve still = Curve::constant(kHalfPlane, p);
  EXPECT_EQ(parallel_transport(still, u, 0.8).components, u.components);
  const Curve g = geodesic_between(kHalfPlane, p, random_point(kHalfPlane, rng));
  EXPECT_EQ(parallel_transport(g, u, 0.0).components, u.components);
}

TEST(TransportTest, SphereMatchesRotationAboutGreatCircleAxis) {
  // Along a great circle, transport is the rotation about the circle's axis
  // by the swept angle.
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    const Point p = random_point(kSphere, rng), o = random_point(kSphere, rng);
    const Curve c = geodesic_between(kSphere, p, o);
    const TangentVector u = random_tangent(kSphere, p, rng);
    const Eigen::Vector3d axis =
        Eigen::Vector3d(p.coords).cross(Eigen::Vector3d(o.coords)).normalized();
    const double angle = distance(kSphere, p, o);
    for (double t : {0.25, 0.6, 1.0}) {
      const Eigen::Matrix3d R = Eigen::AngleAxisd(angle * t, axis).toRotationMatrix();
      const Vec expected = R * Eigen::Vector3d(u.components);
      EXPECT_LE((parallel_transport(c, u, t).components - expected).norm(), 1e-12);
    }
  }
}

TEST(TransportTest, HalfPlaneClosedFormMatchesFineOde) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const Curve c = geodesic_between(kHalfPlane, random_point(kHalfPlane, rng),
                                     random_point(kHalfPlane, rng));
    const TangentVector u = random_tangent(kHalfPlane, c.start(), rng);
    const Vec exact = parallel_transport(c, u, 1.0, closed_form()).components;
    const Vec fine = parallel_transport(c, u, 1.0, ode(2048)).components;
    EXPECT_LE((exact - fine).norm(), 1e-9 * std::max(1.0, exact.norm()));
  }
}

TEST(TransportTest, PreservesInnerProducts) {
  std::mt19937_64 rng(6);
  double closed = 0.0, integrated = 0.0;
  for (const ManifoldModel& m : {kSphere, kHalfPlane}) {
    for (int trial = 0; trial < 50; ++trial) {
      const Point p = random_point(m, rng);
      const Curve c = geodesic_between(m, p, random_point(m, rng));
      const OrthonormalFrame f = random_frame(m, p, rng);
      for (double t : {0.5, 1.0}) {
        const TransportResult a = transport_vectors(c, f.vectors, t, closed_form());
        const TransportResult b = transport_vectors(c, f.vectors, t, ode(256));
        closed = std::max(closed, frame_defect(m, {c.position(t), a.vectors}));
        integrated = std::max(integrated, frame_defect(m, {c.position(t), b.vectors}));
      }
    }
  }
  EXPECT_LE(closed, 1e-8);
  EXPECT_LE(integrated, 1e-5);
}

TEST(TransportTest, IsLinear) {
  std::mt19937_64 rng(7);
  for (const ManifoldModel& m : {kSphere, kHalfPlane}) {
    const Point p = random_point(m, rng);
    const Curve c = geodesic_between(m, p, random_point(m, rng));
    const TangentVector u = random_tangent(m, p, rng), v = random_tangent(m, p, rng);
    const TangentVector w{p, 1.5 * u.components - 0.5 * v.components};
    for (const TransportOptions& opt : {closed_form(), ode(128)}) {
      const Vec lhs = parallel_transport(c, w, 0.9, opt).components;
      const Vec rhs = 1.5 * parallel_transport(c, u, 0.9, opt).components -
                      0.5 * parallel_transport(c, v, 0.9, opt).components;
      EXPECT_LE((lhs - rhs).norm(), 1e-12);
    }
  }
}

TEST(TransportTest, ReparametrizedGeodesicAgrees) {
  std::mt19937_64 rng(8);
  const Curve c = geodesic_between(kHalfPlane, random_point(kHalfPlane, rng),
                                   random_point(kHalfPlane, rng));
  const Curve r = reparametrize(c, [](double t) { return t * t; },
                                [](double t) { return 2 * t; });
  const TangentVector u = random_tangent(kHalfPlane, c.start(), rng);
  const TransportResult res = transport_vectors(r, std::span(&u, 1), 0.7);
  EXPECT_EQ(res.mode, TransportMode::kOde);
  EXPECT_LE((res.vectors[0].components -
             parallel_transport(c, u, 0.49).components).norm(),
            1e-8);
}

TEST(TransportTest, LatitudeLoopMatchesMovingFrameSolution) {
  const double theta0 = 1.1;
  const Curve loop = latitude_loop(theta0);
  const TangentVector u{loop.start(), Vec(Eigen::Vector3d(0, 1, 0))};
  for (double t : {0.2, 0.5, 0.9}) {
    const Vec got = parallel_transport(loop, u, t).components;
    EXPECT_LE((got - latitude_transport(theta0, t)).norm(), 1e-8) << t;
  }
}

double log2_error_ratio(const Curve& c, const TangentVector& u, double t,
                        const Vec& exact, int steps) {
  const double e1 = (parallel_transport(c, u, t, ode(steps)).components - exact).norm();
  const double e2 =
      (parallel_transport(c, u, t, ode(2 * steps)).components - exact).norm();
  EXPECT_GT(e2, 1e-13) << "errors already at round-off";
  return std::log2(e1 / e2);
}

TEST(TransportTest, OdeConvergesAtLeastQuadratically) {
  // Half-plane geodesics against the closed form. On Sphere2 geodesics lie
  // on the equator of the working chart, where the ODE is trivial, so the
  // latitude loop and its hand solution stand in for them.
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 5; ++trial) {
    const Point p = random_point(kHalfPlane, rng);
    const Curve c = geodesic_between(kHalfPlane, p, random_point(kHalfPlane, rng));
    const TangentVector u = random_tangent(kHalfPlane, p, rng);
    const Vec exact = parallel_transport(c, u, 1.0, closed_form()).components;
    EXPECT_GE(log2_error_ratio(c, u, 1.0, exact, 8), 1.9);
  }
  const double theta0 = 1.1;
  const Curve loop = latitude_loop(theta0);
  const TangentVector u{loop.start(), Vec(Eigen::Vector3d(0, 1, 0))};
  EXPECT_GE(log2_error_ratio(loop, u, 0.5, latitude_transport(theta0, 0.5), 8),
            1.9);
}

TEST(TransportTest, RejectsMisplacedVectorsAndTimes) {
  std::mt19937_64 rng(10);
  const Curve c = geodesic_between(kHalfPlane, random_point(kHalfPlane, rng),
                                   random_point(kHalfPlane, rng));
  const TangentVector u = random_tangent(kHalfPlane, c.start(), rng);
  EXPECT_THROW(parallel_transport(c, u, 1.5), Error);
  const TangentVector elsewhere{c.end(), u.components};
  EXPECT_THROW(parallel_transport(c, elsewhere, 0.5), Error);
  TransportOptions identity;
  identity.mode = TransportMode::kIdentity;
  EXPECT_THROW(parallel_transport(c, u, 0.5, identity), Error);
  EXPECT_THROW(parallel_transport(latitude_loop(1.0),
                                  {latitude_loop(1.0).start(),
                                   Vec(Eigen::Vector3d(0, 1, 0))},
                                  0.5, closed_form()),
               Error);
}

TEST(TransportTest, ChartForCurveKeepsClearOfPoles) {
  const Curve loop = latitude_loop(0.05);
  const WorkingChart chart = chart_for_curve(loop, 1.0);
  for (int i = 0; i <= 64; ++i) {
    EXPECT_GE(chart.polar_clearance(loop.position(i / 64.0)), 0.1);
  }
}

}  // namespace
}  // namespace rig
