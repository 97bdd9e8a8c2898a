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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Every random draw derives from kDefaultSeed.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "rig/attribution.h"
#include "rig/curve.h"
#include "rig/harness.h"
#include "rig/sampling.h"
#include "rig/transport.h"

namespace rig {
namespace {

const ManifoldModel kSphere = ManifoldModel::sphere2();
const ManifoldModel kHalfPlane = ManifoldModel::half_plane2();

std::vector<ManifoldModel> families(int euclidean_dim) {
  return {ManifoldModel::euclidean(euclidean_dim), kSphere, kHalfPlane};
}

std::mt19937_64 stream(std::uint64_t tag) {
  return std::mt19937_64(derive_seed(kDefaultSeed, tag));
}

double max_abs(const Mat& a) { return a.size() ? a.cwiseAbs().maxCoeff() : 0.0; }

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

// 1. RIG against IG on random Euclidean MLP instances.
Outcome euclidean_restriction() {
  auto rng = stream(1);
  double worst = 0.0;
  std::uniform_int_distribution<int> dim(2, 8), units(2, 16);
  for (int trial = 0; trial < 100; ++trial) {
    const ManifoldModel m = ManifoldModel::euclidean(dim(rng));
    const ScalarField f =
        ScalarField::mlp(m, random_mlp(m.dim(), {units(rng), units(rng)}, rng));
    const Point x = random_point(m, rng), base = random_point(m, rng);
    const OrthonormalFrame frame = random_frame(m, x, rng);
    worst = std::max(worst, max_abs(rig(f, x, base, frame).attributions -
                                    ig(f, x, base, frame).attributions));
  }
  return {worst <= 1e-8, "100 instances, max |RIG - IG| = " + fmt(worst) + " (tol 1e-8)"};
}

// 2. Completeness at default quadrature, and the 8 -> 32 node improvement
// on fields whose 8-node error is still above round-off.
Outcome completeness() {
  auto rng = stream(2);
  double worst = 0.0, worst_ratio = std::numeric_limits<double>::infinity();
  int groups = 0;
  for (const ManifoldModel& m : families(4)) {
    std::vector<std::function<ScalarField()>> makers = {
        [&] { return ScalarField::gaussian_bump(m, random_point(m, rng), 0.45); },
        [&] { return ScalarField::mlp(m, random_mlp(m.coord_dim(), {12, 12}, rng, 2.0)); },
    };
    if (m.kind() == ManifoldKind::kSphere2) {
      makers.push_back([] { return ScalarField::sphere_height(); });
    }
    if (m.kind() == ManifoldKind::kHalfPlane2) {
      makers.push_back([] { return ScalarField::log_y(); });
    }
    for (size_t g = 0; g < makers.size(); ++g) {
      double coarse = 0.0, fine = 0.0;
      for (int pair = 0; pair < 20; ++pair) {
        const ScalarField f = makers[g]();
        const Point p = random_point(m, rng), o = random_point(m, rng);
        const OrthonormalFrame frame = random_frame(m, p, rng);
        worst = std::max(worst, rig(f, p, o, frame).completeness_residual);
        coarse += rig(f, p, o, frame, Quadrature::fixed(8)).completeness_residual;
        fine += rig(f, p, o, frame, Quadrature::fixed(32)).completeness_residual;
      }
      // The closed-form analytic fields are already exact at 8 nodes; the
      // ratio is only meaningful above round-off.
      if (coarse > 1e-12) {
        ++groups;
        worst_ratio = std::min(worst_ratio, fine > 0.0 ? coarse / fine : INFINITY);
      }
    }
  }
  const bool pass = worst <= 1e-6 && groups >= 6 && worst_ratio >= 10.0;
  return {pass, "max residual " + fmt(worst) + " (tol 1e-6); min 8->32 node ratio " +
                    fmt(worst_ratio) + " over " + std::to_string(groups) +
                    " pre-asymptotic groups (need >= 10)"};
}

// 3. Isometry invariance of the full alpha matrix.
Outcome isometry_invariance() {
  bool pass = true;
  std::string detail;
  for (ManifoldKind kind :
       {ManifoldKind::kEuclidean, ManifoldKind::kSphere2, ManifoldKind::kHalfPlane2}) {
    AxiomCheckSpec spec;
    spec.axiom = AxiomKind::kIsometryInvariance;
    spec.manifold = kind;
    spec.trials = 20;
    spec.tolerance = kind == ManifoldKind::kEuclidean ? 1e-10 : 1e-7;
    const AxiomReport r = check_isometry_invariance(spec);
    pass = pass && r.pass;
    detail += (detail.empty() ? "" : "; ") + r.trials.front().manifold +
              " " + fmt(r.max_residual) + " (tol " + fmt(spec.tolerance) + ")";
  }
  return {pass, detail};
}

// 4. Eigenframe re-evaluation, trace, and the bound over random directions.
Outcome eigen_characterization() {
  auto rng = stream(4);
  double reeval = 0.0, trace = 0.0;
  long violations = 0;
  int instances = 0;
  for (const ManifoldModel& m : families(5)) {
    for (int trial = 0; trial < 10; ++trial) {
      const ScalarField f =
          trial % 2 ? ScalarField::gaussian_bump(m, random_point(m, rng), 1.0)
                    : ScalarField::mlp(m, random_mlp(m.coord_dim(), {8, 8}, rng));
      const Point p = random_point(m, rng), o = random_point(m, rng);
      const AttributionReport r = eigen_rig(f, p, o);
      reeval = std::max(reeval, max_abs(r.attributions - *r.eigenvalues));
      trace = std::max(trace, std::abs(r.eigenvalues->sum() - (f.value(p) - f.value(o))));
      const AttributionMatrix a = alpha_matrix(f, p, o, orthonormal_frame(m, p));
      violations += attribution_bound_check(a, 10000, rng(), 1e-10).violations;
      ++instances;
    }
  }
  const bool pass = reeval <= 1e-8 && trace <= 1e-6 && violations == 0;
  return {pass, std::to_string(instances) + " instances: re-evaluation " + fmt(reeval) +
                    " (tol 1e-8), trace " + fmt(trace) + " (tol 1e-6), " +
                    std::to_string(violations) + " bound violations in 10^4 directions each"};
}

// 5. Geometry kernel.
Outcome geometry_kernel() {
  auto rng = stream(5);
  double round_trip = 0.0, closed = 0.0, integrated = 0.0;
  for (const ManifoldModel& m : families(4)) {
    for (int trial = 0; trial < 100; ++trial) {
      const Point p = random_point(m, rng), q = random_point(m, rng);
      round_trip = std::max(round_trip,
                            (exp_map(m, log_map(m, p, q)).coords - q.coords).norm());
    }
  }
  TransportOptions closed_form, ode;
  closed_form.mode = TransportMode::kClosedForm;
  ode.mode = TransportMode::kOde;
  ode.steps = 256;
  ode.refine = false;
  for (const ManifoldModel& m : {kSphere, kHalfPlane}) {
    for (int trial = 0; trial < 50; ++trial) {
      const Point p = random_point(m, rng);
      const Curve c = geodesic_between(m, p, random_point(m, rng));
      const OrthonormalFrame f = random_frame(m, p, rng);
      const Point end = c.position(1.0);
      closed = std::max(closed, frame_defect(m, {end, transport_vectors(c, f.vectors, 1.0,
                                                                          closed_form).vectors}));
      integrated = std::max(
          integrated, frame_defect(m, {end, transport_vectors(c, f.vectors, 1.0, ode).vectors}));
    }
  }
  // Convergence order of the transport ODE against the closed form.
  double order = INFINITY;
  for (int trial = 0; trial < 10; ++trial) {
    const Point p = random_point(kHalfPlane, rng);
    const Curve c = geodesic_between(kHalfPlane, p, random_point(kHalfPlane, rng));
    const TangentVector u = random_tangent(kHalfPlane, p, rng);
    const Vec exact = parallel_transport(c, u, 1.0, closed_form).components;
    TransportOptions coarse = ode, finer = ode;
    coarse.steps = 8;
    finer.steps = 16;
    const double e1 = (parallel_transport(c, u, 1.0, coarse).components - exact).norm();
    const double e2 = (parallel_transport(c, u, 1.0, finer).components - exact).norm();
    if (e2 > 1e-14) order = std::min(order, std::log2(e1 / e2));
  }
  // Holonomy of the latitude loop at theta0 = pi / 3.
  const double theta0 = std::numbers::pi / 3, two_pi = 2.0 * std::numbers::pi;
  const double s = std::sin(theta0), z = std::cos(theta0);
  const Curve loop(
      kSphere,
      [=](double t) {
        return Vec(Eigen::Vector3d(s * std::cos(two_pi * t), s * std::sin(two_pi * t), z));
      },
      [=](double t) {
        return Vec(Eigen::Vector3d(-two_pi * s * std::sin(two_pi * t),
                                   two_pi * s * std::cos(two_pi * t), 0.0));
      },
      false);
  const TangentVector u{loop.start(), Vec(Eigen::Vector3d(0, 1, 0))};
  const Vec back = parallel_transport(loop, u, 1.0).components;
  const Vec normal = Eigen::Vector3d(loop.start().coords).cross(Eigen::Vector3d(u.components));
  const double angle = std::atan2(normal.dot(back), u.components.dot(back));
  const double holonomy =
      std::abs(std::remainder(angle - two_pi * (1.0 - std::cos(theta0)), two_pi));
  const bool pass = round_trip <= 1e-8 && closed <= 1e-8 && integrated <= 1e-5 &&
                    order >= 1.9 && holonomy <= 1e-4;
  return {pass, "exp/log " + fmt(round_trip) + ", transport defect closed " + fmt(closed) +
                    " / ODE " + fmt(integrated) + ", ODE order " + fmt(order) +
                    ", holonomy error " + fmt(holonomy)};
}

// 6. Axiom drivers at their default tolerances, and deterministic refusal on
// the cut locus.
Outcome axiom_drivers() {
  bool pass = true;
  std::string detail;
  for (const AxiomCheckSpec& spec : default_suite(kDefaultSeed)) {
    if (spec.axiom != AxiomKind::kLinearity && spec.axiom != AxiomKind::kSensitivity &&
        spec.axiom != AxiomKind::kSymmetryInvariance &&
        spec.axiom != AxiomKind::kImplementation) {
      continue;
    }
    const AxiomReport r = run_check(spec);
    pass = pass && r.pass;
    detail += std::string(axiom_name(spec.axiom)).substr(0, 4) + " " + fmt(r.max_residual) +
              "/" + fmt(spec.tolerance) + " ";
  }
  int refusals = 0;
  const Point north{Vec(Eigen::Vector3d(0, 0, 1))}, south{Vec(Eigen::Vector3d(0, 0, -1))};
  for (int attempt = 0; attempt < 3; ++attempt) {
    try {
      rig(ScalarField::sphere_height(), north, south, orthonormal_frame(kSphere, north));
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kCutLocusAmbiguity) ++refusals;
    }
  }
  pass = pass && refusals == 3;
  return {pass, detail + "; antipodal refusals " + std::to_string(refusals) + "/3"};
}

// 7. Reverse-mode MLP gradients against central differences.
Outcome gradient_gate() {
  auto rng = stream(7);
  double worst = 0.0;
  for (const ManifoldModel& m : families(5)) {
    const MlpWeights w = random_mlp(m.coord_dim(), {10, 10}, rng);
    const ScalarField f = ScalarField::mlp(m, w);
    for (int trial = 0; trial < 100; ++trial) {
      const Point p = random_point(m, rng);
      // Ambient gradient of the network.
      const Vec g = mlp_value_and_gradient(w, p.coords).gradient;
      Vec fd(g.size());
      const double h = 1e-5;
      for (Eigen::Index i = 0; i < g.size(); ++i) {
        Vec a = p.coords, b = p.coords;
        a[i] += h;
        b[i] -= h;
        fd[i] = (mlp_value(w, a) - mlp_value(w, b)) / (2 * h);
      }
      worst = std::max(worst, (g - fd).norm() / g.norm());
      // Riemannian gradient against derivatives along geodesic rays.
      const OrthonormalFrame frame = orthonormal_frame(m, p);
      Vec exact(m.dim()), rays(m.dim());
      for (int i = 0; i < m.dim(); ++i) {
        exact[i] = f.differential(frame.vectors[i]);
        rays[i] = ray_derivative(f, frame.vectors[i], h);
      }
      worst = std::max(worst, (exact - rays).norm() / exact.norm());
    }
  }
  return {worst <= 1e-5, "300 points, max relative error " + fmt(worst) + " (tol 1e-5)"};
}

}  // namespace
}  // namespace rig

int main() {
  struct Criterion {
    const char* name;
    rig::Outcome (*run)();
  };
  const Criterion criteria[] = {
      {"euclidean restriction", rig::euclidean_restriction},
      {"completeness", rig::completeness},
      {"isometry invariance", rig::isometry_invariance},
      {"eigen characterization", rig::eigen_characterization},
      {"geometry kernel", rig::geometry_kernel},
      {"axiom drivers", rig::axiom_drivers},
      {"gradient gate", rig::gradient_gate},
  };
  int failed = 0, index = 0;
  for (const Criterion& c : criteria) {
    ++index;
    const auto start = std::chrono::steady_clock::now();
    rig::Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s [%d] %s: %s [%.2fs]\n", outcome.pass ? "PASS" : "FAIL", index, c.name,
                outcome.detail.c_str(), seconds);
    if (!outcome.pass) ++failed;
  }
  std::printf("%d/%d criteria passed\n", index - failed, index);
  return failed ? 1 : 0;
}
