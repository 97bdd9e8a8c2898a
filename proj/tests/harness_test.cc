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

#include "rig/harness.h"

#include <cmath>

#include <gtest/gtest.h>

#include "rig/attribution.h"
#include "rig/isometry.h"

namespace rig {
namespace {

const ManifoldModel kSphere = ManifoldModel::sphere2();
const ManifoldModel kHalfPlane = ManifoldModel::half_plane2();

Point pt(std::initializer_list<double> xs) {
  Vec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return {v};
}

AxiomCheckSpec spec_for(AxiomKind axiom, int trials,
                        std::optional<ManifoldKind> manifold = std::nullopt) {
  AxiomCheckSpec s;
  s.axiom = axiom;
  s.trials = trials;
  s.tolerance = default_tolerance(axiom, manifold);
  s.manifold = manifold;
  return s;
}

TEST(HarnessTest, DefaultSuitePasses) {
  const std::vector<AxiomReport> reports = run_suite(default_suite());
  ASSERT_EQ(reports.size(), default_suite().size());
  for (const AxiomReport& r : reports) {
    EXPECT_TRUE(r.pass) << axiom_name(r.spec.axiom) << " max " << r.max_residual;
    EXPECT_EQ(static_cast<int>(r.trials.size()), r.spec.trials);
    EXPECT_EQ(r.aborted, 0);
  }
}

TEST(HarnessTest, ReproducibleFromSeed) {
  for (AxiomKind axiom : {AxiomKind::kLinearity, AxiomKind::kCompleteness,
                          AxiomKind::kIsometryInvariance, AxiomKind::kEigenBound}) {
    const AxiomCheckSpec s = spec_for(axiom, 6);
    const AxiomReport a = run_check(s), b = run_check(s);
    ASSERT_EQ(a.trials.size(), b.trials.size());
    for (size_t i = 0; i < a.trials.size(); ++i) {
      EXPECT_EQ(a.trials[i].residual, b.trials[i].residual);
      EXPECT_EQ(a.trials[i].p, b.trials[i].p);
      EXPECT_EQ(a.trials[i].seed, b.trials[i].seed);
    }
    AxiomCheckSpec other = s;
    other.seed = s.seed + 1;
    EXPECT_NE(run_check(other).trials[0].p, a.trials[0].p);
  }
}

TEST(HarnessTest, ParallelSuiteMergesInSpecOrder) {
  std::vector<AxiomCheckSpec> specs;
  for (AxiomKind axiom : {AxiomKind::kCompleteness, AxiomKind::kSensitivity,
                          AxiomKind::kImplementation, AxiomKind::kLinearity}) {
    specs.push_back(spec_for(axiom, 4));
  }
  const std::vector<AxiomReport> serial = run_suite(specs, 1);
  const std::vector<AxiomReport> parallel = run_suite(specs, 3);
  ASSERT_EQ(serial.size(), parallel.size());
  for (size_t i = 0; i < serial.size(); ++i) {
    EXPECT_EQ(parallel[i].spec.axiom, specs[i].axiom);
    for (size_t k = 0; k < serial[i].trials.size(); ++k) {
      EXPECT_EQ(serial[i].trials[k].residual, parallel[i].trials[k].residual);
    }
  }
}

TEST(HarnessTest, VerdictFollowsTolerance) {
  AxiomCheckSpec s = spec_for(AxiomKind::kCompleteness, 6);
  s.tolerance = 1e-300;
  const AxiomReport r = run_check(s);
  EXPECT_FALSE(r.pass);
  EXPECT_GT(r.max_residual, s.tolerance);
  s.tolerance = r.max_residual;
  EXPECT_TRUE(run_check(s).pass);
}

TEST(HarnessTest, RejectsInvalidSpecs) {
  AxiomCheckSpec s = spec_for(AxiomKind::kLinearity, 0);
  EXPECT_THROW(run_check(s), Error);
  s.trials = 3;
  s.tolerance = 0.0;
  EXPECT_THROW(run_check(s), Error);
  try {
    run_check(spec_for(AxiomKind::kSymmetryInvariance, 3, ManifoldKind::kSphere2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kWrongManifold);
  }
}

TEST(HarnessTest, AxiomNamesRoundTrip) {
  for (AxiomKind a : {AxiomKind::kImplementation, AxiomKind::kLinearity,
                      AxiomKind::kSensitivity, AxiomKind::kSymmetryInvariance,
                      AxiomKind::kCompleteness, AxiomKind::kIsometryInvariance,
                      AxiomKind::kEuclideanRestriction, AxiomKind::kEigenBound}) {
    EXPECT_EQ(parse_axiom(axiom_name(a)), a);
  }
  EXPECT_THROW(parse_axiom("Compactness"), Error);
}

TEST(HarnessTest, ManifoldFilterRestrictsTrials) {
  const AxiomReport r =
      run_check(spec_for(AxiomKind::kCompleteness, 5, ManifoldKind::kHalfPlane2));
  for (const TrialRecord& t : r.trials) EXPECT_EQ(t.manifold, "half_plane2");
  const AxiomReport all = run_check(spec_for(AxiomKind::kCompleteness, 3));
  EXPECT_EQ(all.trials[0].manifold, "euclidean(" + std::to_string(all.trials[0].p.size()) + ")");
  EXPECT_EQ(all.trials[1].manifold, "sphere2");
  EXPECT_EQ(all.trials[2].manifold, "half_plane2");
}

TEST(HarnessTest, ImplementationReportStatesItsScope) {
  const AxiomReport r = run_check(spec_for(AxiomKind::kImplementation, 2));
  EXPECT_NE(r.notes.find("constructed equivalent pairs"), std::string::npos);
}

// Worked cases of the individual axioms, computed directly with the engine.

TEST(AxiomCaseTest, SensitivityOfCoordinateField) {
  const ManifoldModel m = ManifoldModel::euclidean(2);
  const ScalarField f = ScalarField::coordinate(m, 0);
  const Point x = pt({0.7, -1.3});
  const AttributionReport r = rig(f, x, pt({-0.4, 2.0}), orthonormal_frame(m, x));
  EXPECT_LE(std::abs(r.attributions[1]), 1e-12);
}

TEST(AxiomCaseTest, LinearityWithUnitCoefficients) {
  const ManifoldModel m = ManifoldModel::euclidean(2);
  const ScalarField f = ScalarField::gaussian_bump(m, pt({0.1, 0.2}), 1.0);
  const ScalarField g = linear_combination(1.0, f, 0.0, ScalarField::coordinate(m, 1));
  const Point x = pt({1.0, 0.5});
  const Quadrature q = Quadrature::fixed(32);
  EXPECT_EQ(rig(g, x, pt({0, 0}), orthonormal_frame(m, x), q).attributions,
            rig(f, x, pt({0, 0}), orthonormal_frame(m, x), q).attributions);
}

TEST(AxiomCaseTest, SymmetryOfSumField) {
  const ManifoldModel m = ManifoldModel::euclidean(2);
  const ScalarField f = ScalarField::affine(m, Vec::Ones(2), 0.0);
  const Point x = pt({1, 2}), sx = pt({2, 1}), base = pt({0, 0});
  const double a1 = rig(f, x, base, orthonormal_frame(m, x)).attributions[0];
  const double a2 = rig(f, sx, base, orthonormal_frame(m, sx)).attributions[1];
  EXPECT_NEAR(a1, a2, 1e-15);
  // On the diagonal the swap fixes x.
  const Point d = pt({1.5, 1.5});
  const Vec a = rig(f, d, base, orthonormal_frame(m, d)).attributions;
  EXPECT_NEAR(a[0], a[1], 1e-15);
}

TEST(AxiomCaseTest, SphereQuarterTurnOfHeightField) {
  const Eigen::Matrix3d R =
      Eigen::AngleAxisd(M_PI / 2, Eigen::Vector3d::UnitZ()).toRotationMatrix();
  const Isometry s = Isometry::rotation(R);
  const ScalarField f = ScalarField::sphere_height();
  const Point p{Vec(Eigen::Vector3d(0.6, 0.0, 0.8))};
  const Point o{Vec(Eigen::Vector3d(0.0, 0.6, -0.8))};
  const OrthonormalFrame frame = orthonormal_frame(kSphere, p);
  OrthonormalFrame moved{apply_isometry(kSphere, s, p), {}};
  for (const TangentVector& u : frame.vectors) {
    moved.vectors.push_back(differential_of_isometry(kSphere, s, u));
  }
  const Mat a = alpha_matrix(f, p, o, frame).entries;
  const Mat b = alpha_matrix(ScalarField::compose(f, s.inverse()), moved.base,
                             apply_isometry(kSphere, s, o), moved)
                    .entries;
  EXPECT_LE((a - b).cwiseAbs().maxCoeff(), 1e-7);
}

TEST(AxiomCaseTest, HalfPlaneDilationOfLogY) {
  const double r2 = std::sqrt(2.0);
  const Isometry s = Isometry::mobius(r2, 0.0, 0.0, 1.0 / r2);  // z -> 2z
  const ScalarField f = ScalarField::log_y();
  const Point p = pt({-0.5, 0.7}), o = pt({1.2, 2.0});
  const OrthonormalFrame frame = orthonormal_frame(kHalfPlane, p);
  OrthonormalFrame moved{apply_isometry(kHalfPlane, s, p), {}};
  for (const TangentVector& u : frame.vectors) {
    moved.vectors.push_back(differential_of_isometry(kHalfPlane, s, u));
  }
  const ScalarField pushed = ScalarField::compose(f, s.inverse());
  EXPECT_NEAR(pushed.value(moved.base), f.value(p), 1e-15);
  const Mat a = alpha_matrix(f, p, o, frame).entries;
  const Mat b =
      alpha_matrix(pushed, moved.base, apply_isometry(kHalfPlane, s, o), moved).entries;
  EXPECT_LE((a - b).cwiseAbs().maxCoeff(), 1e-7);
}

TEST(AxiomCaseTest, IdentityIsometryIsExact) {
  const ScalarField f = ScalarField::log_y();
  const Point p = pt({0.0, 1.0}), o = pt({1.0, 3.0});
  const OrthonormalFrame frame = orthonormal_frame(kHalfPlane, p);
  const Mat a = alpha_matrix(f, p, o, frame).entries;
  const Mat b = alpha_matrix(ScalarField::compose(f, Isometry::identity()),
                             apply_isometry(kHalfPlane, Isometry::identity(), p), o,
                             frame)
                    .entries;
  EXPECT_EQ((a - b).cwiseAbs().maxCoeff(), 0.0);
}

}  // namespace
}  // namespace rig
