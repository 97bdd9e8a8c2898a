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

#include "rig/quadrature.h"

#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

namespace rig {
namespace {

double apply(const QuadratureNodes& q, double (*f)(double)) {
  double s = 0.0;
  for (size_t i = 0; i < q.t.size(); ++i) s += q.w[i] * f(q.t[i]);
  return s;
}

TEST(QuadratureTest, TwoPointGaussLegendre) {
  const QuadratureNodes q = quadrature_nodes(QuadratureRule::kGaussLegendre, 2);
  const double offset = 0.5 / std::sqrt(3.0);
  EXPECT_NEAR(q.t[0], 0.5 - offset, 1e-15);
  EXPECT_NEAR(q.t[1], 0.5 + offset, 1e-15);
  EXPECT_NEAR(q.w[0], 0.5, 1e-15);
  EXPECT_NEAR(q.w[1], 0.5, 1e-15);
}

TEST(QuadratureTest, GaussLegendreExactToDegreeTwoNMinusOne) {
  for (int n : {3, 5, 8, 17, 64}) {
    const QuadratureNodes q = quadrature_nodes(QuadratureRule::kGaussLegendre, n);
    EXPECT_NEAR(std::accumulate(q.w.begin(), q.w.end(), 0.0), 1.0, 1e-14);
    for (int k = 0; k <= 2 * n - 1; ++k) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += q.w[i] * std::pow(q.t[i], k);
      EXPECT_NEAR(s, 1.0 / (k + 1), 1e-14) << "n=" << n << " k=" << k;
    }
    for (int i = 0; i < n; ++i) {
      EXPECT_NEAR(q.t[i] + q.t[n - 1 - i], 1.0, 1e-15);
      EXPECT_NEAR(q.w[i], q.w[n - 1 - i], 1e-15);
      EXPECT_GT(q.t[i], 0.0);
      EXPECT_LT(q.t[i], 1.0);
    }
  }
}

TEST(QuadratureTest, TrapezoidErrorTerm) {
  // Error of the trapezoid rule on x^2 is h^2 / 6.
  for (int n : {2, 5, 11}) {
    const QuadratureNodes q = quadrature_nodes(QuadratureRule::kTrapezoid, n);
    const double h = 1.0 / (n - 1);
    EXPECT_NEAR(apply(q, [](double x) { return x * x; }) - 1.0 / 3.0, h * h / 6.0,
                1e-15);
    EXPECT_NEAR(apply(q, [](double x) { return 3.0 * x + 1.0; }), 2.5, 1e-15);
  }
}

TEST(QuadratureTest, RefinementReachesTolerance) {
  for (QuadratureRule rule : {QuadratureRule::kGaussLegendre, QuadratureRule::kTrapezoid}) {
    Quadrature q;
    q.rule = rule;
    q.nodes = 4;
    q.max_nodes = 1 << 20;
    int used = 0;
    const double v = integrate_scalar(q, [](double t) { return std::exp(t); }, &used);
    EXPECT_NEAR(v, std::exp(1.0) - 1.0, 1e-8);
    EXPECT_GT(used, 4);
  }
}

TEST(QuadratureTest, FixedRuleDoesNotRefine) {
  int used = 0;
  integrate_scalar(Quadrature::fixed(8), [](double t) { return std::sin(40 * t); }, &used);
  EXPECT_EQ(used, 8);
}

TEST(QuadratureTest, MatrixIntegrandAllEntries) {
  Quadrature q;
  const QuadratureResult r = integrate(q, [](const QuadratureNodes& nodes) {
    Mat acc = Mat::Zero(2, 2);
    for (size_t i = 0; i < nodes.t.size(); ++i) {
      const double t = nodes.t[i];
      Mat m(2, 2);
      m << 1.0, t, t * t, std::cos(t);
      acc += nodes.w[i] * m;
    }
    return acc;
  });
  EXPECT_NEAR(r.value(0, 0), 1.0, 1e-14);
  EXPECT_NEAR(r.value(0, 1), 0.5, 1e-14);
  EXPECT_NEAR(r.value(1, 0), 1.0 / 3.0, 1e-14);
  EXPECT_NEAR(r.value(1, 1), std::sin(1.0), 1e-14);
}

TEST(QuadratureTest, NonConvergenceIsReported) {
  Quadrature q;
  q.nodes = 4;
  q.max_nodes = 16;
  try {
    integrate_scalar(q, [](double t) { return std::sin(300 * t); });
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kQuadratureNotConverged);
  }
}

TEST(QuadratureTest, ValidatesParameters) {
  Quadrature q;
  q.nodes = 1;
  EXPECT_THROW(q.validate(), Error);
  q = Quadrature{};
  q.tol = 0.0;
  EXPECT_THROW(q.validate(), Error);
  q = Quadrature{};
  q.max_nodes = 8;
  EXPECT_THROW(q.validate(), Error);
}

}  // namespace
}  // namespace rig
