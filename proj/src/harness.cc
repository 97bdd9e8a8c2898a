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

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <memory>
#include <numeric>
#include <random>
#include <thread>

#include "rig/attribution.h"
#include "rig/isometry.h"
#include "rig/mlp.h"
#include "rig/scalar_field.h"

namespace rig {
namespace {

constexpr int kBoundSamples = 10000;

std::vector<double> to_std(const Vec& v) { return {v.data(), v.data() + v.size()}; }

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

ManifoldModel draw_model(ManifoldKind kind, std::mt19937_64& rng, int min_dim,
                         int max_dim) {
  switch (kind) {
    case ManifoldKind::kEuclidean:
      return ManifoldModel::euclidean(uniform_int(rng, min_dim, max_dim));
    case ManifoldKind::kSphere2:
      return ManifoldModel::sphere2();
    case ManifoldKind::kHalfPlane2:
      return ManifoldModel::half_plane2();
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown manifold kind");
}

MlpWeights draw_mlp(int input_dim, std::mt19937_64& rng, int max_units = 8) {
  const int h1 = uniform_int(rng, 2, max_units);
  const int h2 = uniform_int(rng, 2, max_units);
  return random_mlp(input_dim, {h1, h2}, rng);
}

// The analytic field of each family: a Gaussian bump on Euclidean space,
// the height function on Sphere2 and log y on HalfPlane2.
ScalarField analytic_field(const ManifoldModel& m, std::mt19937_64& rng) {
  switch (m.kind()) {
    case ManifoldKind::kEuclidean:
      return ScalarField::gaussian_bump(m, random_point(m, rng), 1.5);
    case ManifoldKind::kSphere2:
      return ScalarField::sphere_height();
    case ManifoldKind::kHalfPlane2:
      return ScalarField::log_y();
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown manifold kind");
}

ScalarField mlp_field(const ManifoldModel& m, std::mt19937_64& rng) {
  return ScalarField::mlp(m, draw_mlp(m.coord_dim(), rng));
}

double max_abs(const Mat& a) {
  return a.size() ? a.cwiseAbs().maxCoeff() : 0.0;
}

TrialRecord record(const ManifoldModel& m, const ScalarField& f,
                   const Point& p, const Point& o, double residual) {
  TrialRecord r;
  r.manifold = m.name();
  r.field = f.description();
  r.p = to_std(p.coords);
  r.o = to_std(o.coords);
  r.residual = residual;
  return r;
}

using Trial = std::function<TrialRecord(ManifoldKind, int, std::mt19937_64&)>;

// Shared trial loop. Trial k runs on families[k % size]; attempt a draws from
// derive_seed(spec.seed, a), so cut-locus retries stay reproducible.
AxiomReport drive(const AxiomCheckSpec& spec,
                  std::vector<ManifoldKind> families, const Trial& trial,
                  std::string notes) {
  spec.validate();
  if (spec.manifold) {
    if (std::find(families.begin(), families.end(), *spec.manifold) ==
        families.end()) {
      throw Error(ErrorCode::kWrongManifold,
                  std::string(axiom_name(spec.axiom)) +
                      " check is not defined on the requested manifold");
    }
    families = {*spec.manifold};
  }
  AxiomReport report;
  report.spec = spec;
  report.notes = std::move(notes);
  const int max_attempts = 2 * spec.trials + 8;
  for (int attempt = 0;
       attempt < max_attempts &&
       static_cast<int>(report.trials.size()) < spec.trials;
       ++attempt) {
    const std::uint64_t seed = derive_seed(spec.seed, attempt);
    std::mt19937_64 rng(seed);
    const int index = static_cast<int>(report.trials.size());
    try {
      TrialRecord r = trial(families[index % families.size()], index, rng);
      r.index = index;
      r.seed = seed;
      report.trials.push_back(std::move(r));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kCutLocusAmbiguity) throw;
      ++report.aborted;
    }
  }
  bool finite = true;
  for (const TrialRecord& r : report.trials) {
    if (!std::isfinite(r.residual)) finite = false;
    report.max_residual = std::max(report.max_residual, r.residual);
  }
  if (!finite) report.max_residual = std::numeric_limits<double>::infinity();
  report.pass = static_cast<int>(report.trials.size()) == spec.trials &&
                report.max_residual <= spec.tolerance;
  if (report.aborted > 0) {
    report.notes += (report.notes.empty() ? "" : " ");
    report.notes += std::to_string(report.aborted) +
                    " trial(s) aborted on the cut locus and redrawn.";
  }
  return report;
}

const std::vector<ManifoldKind> kAllFamilies = {
    ManifoldKind::kEuclidean, ManifoldKind::kSphere2, ManifoldKind::kHalfPlane2};

double report_gap(const AttributionReport& a, const AttributionReport& b) {
  double gap = max_abs(a.attributions - b.attributions);
  gap = std::max(gap, std::abs(a.value_p - b.value_p));
  gap = std::max(gap, std::abs(a.value_o - b.value_o));
  gap = std::max(gap, std::abs(a.completeness_residual - b.completeness_residual));
  return gap;
}

// The sensitivity trial of each family, each with an exact symmetry that
// kills dF(P_t u) along the whole geodesic.
TrialRecord sensitivity_trial(ManifoldKind kind, std::mt19937_64& rng) {
  const ManifoldModel m = draw_model(kind, rng, 2, 6);
  const Quadrature q;
  switch (kind) {
    case ManifoldKind::kEuclidean: {
      // F ignores x_k; u = e_k is constant under identity transport.
      const int k = uniform_int(rng, 0, m.dim() - 1);
      MlpWeights w = draw_mlp(m.dim(), rng);
      w.layers.front().weights.col(k).setZero();
      const ScalarField f = ScalarField::mlp(m, w);
      const Point p = random_point(m, rng), o = random_point(m, rng);
      const AttributionReport r = rig(f, p, o, orthonormal_frame(m, p), q);
      return record(m, f, p, o, std::abs(r.attributions[k]));
    }
    case ManifoldKind::kSphere2: {
      // F depends on z only and p, o share a meridian. The meridian plane
      // contains grad F, and e_phi = normal of that plane transports to
      // itself.
      MlpWeights w = draw_mlp(3, rng);
      w.layers.front().weights.leftCols(2).setZero();
      const ScalarField f = ScalarField::mlp(m, w);
      const double phi = uniform(rng, -M_PI, M_PI);
      auto at = [&](double theta) {
        return Point{Vec(Eigen::Vector3d(std::sin(theta) * std::cos(phi),
                                         std::sin(theta) * std::sin(phi),
                                         std::cos(theta)))};
      };
      const double t1 = uniform(rng, 0.3, M_PI - 0.3);
      const double t0 = uniform(rng, 0.3, M_PI - 0.3);
      const Point p = at(t1), o = at(t0);
      OrthonormalFrame frame{p, {}};
      frame.vectors.push_back(
          {p, Vec(Eigen::Vector3d(-std::sin(phi), std::cos(phi), 0.0))});
      frame.vectors.push_back(
          {p, Vec(Eigen::Vector3d(std::cos(t1) * std::cos(phi),
                                  std::cos(t1) * std::sin(phi),
                                  -std::sin(t1)))});
      const AttributionReport r = rig(f, p, o, frame, q);
      return record(m, f, p, o, std::abs(r.attributions[0]));
    }
    case ManifoldKind::kHalfPlane2: {
      // F depends on y only and p, o share a vertical line; y d/dx stays
      // horizontal under transport along it.
      MlpWeights w = draw_mlp(2, rng);
      w.layers.front().weights.col(0).setZero();
      const ScalarField f = ScalarField::mlp(m, w);
      const double x = uniform(rng, -2.0, 2.0);
      const Point p{Vec(Eigen::Vector2d(x, std::exp(uniform(rng, -1.0, 1.0))))};
      const Point o{Vec(Eigen::Vector2d(x, std::exp(uniform(rng, -1.0, 1.0))))};
      const AttributionReport r = rig(f, p, o, orthonormal_frame(m, p), q);
      return record(m, f, p, o, std::abs(r.attributions[0]));
    }
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown manifold kind");
}

}  // namespace

const char* axiom_name(AxiomKind axiom) {
  switch (axiom) {
    case AxiomKind::kImplementation: return "Implementation";
    case AxiomKind::kLinearity: return "Linearity";
    case AxiomKind::kSensitivity: return "Sensitivity";
    case AxiomKind::kSymmetryInvariance: return "SymmetryInvariance";
    case AxiomKind::kCompleteness: return "Completeness";
    case AxiomKind::kIsometryInvariance: return "IsometryInvariance";
    case AxiomKind::kEuclideanRestriction: return "EuclideanRestriction";
    case AxiomKind::kEigenBound: return "EigenBound";
  }
  return "?";
}

AxiomKind parse_axiom(const std::string& name) {
  for (AxiomKind a :
       {AxiomKind::kImplementation, AxiomKind::kLinearity,
        AxiomKind::kSensitivity, AxiomKind::kSymmetryInvariance,
        AxiomKind::kCompleteness, AxiomKind::kIsometryInvariance,
        AxiomKind::kEuclideanRestriction, AxiomKind::kEigenBound}) {
    if (name == axiom_name(a)) return a;
  }
  throw Error(ErrorCode::kParseError, "unknown axiom '" + name + "'");
}

void AxiomCheckSpec::validate() const {
  if (!(tolerance > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "tolerance must be positive");
  }
  if (trials < 1) {
    throw Error(ErrorCode::kInvalidArgument, "trials must be at least 1");
  }
}

double default_tolerance(AxiomKind axiom, std::optional<ManifoldKind> manifold) {
  switch (axiom) {
    case AxiomKind::kImplementation: return 1e-10;
    case AxiomKind::kLinearity: return 1e-9;
    case AxiomKind::kSensitivity: return 1e-10;
    case AxiomKind::kSymmetryInvariance: return 1e-8;
    case AxiomKind::kCompleteness: return 1e-6;
    case AxiomKind::kIsometryInvariance:
      return manifold == ManifoldKind::kEuclidean ? 1e-10 : 1e-7;
    case AxiomKind::kEuclideanRestriction: return 1e-8;
    case AxiomKind::kEigenBound: return 1e-8;
  }
  return 1e-6;
}

AxiomReport check_implementation_invariance(const AxiomCheckSpec& spec) {
  const Quadrature q = Quadrature::fixed(32);
  return drive(
      spec, kAllFamilies,
      [&](ManifoldKind kind, int index, std::mt19937_64& rng) {
        const ManifoldModel m = draw_model(kind, rng, 2, 5);
        const MlpWeights w = draw_mlp(m.coord_dim(), rng);
        MlpWeights twin;
        if (index % 2 == 0) {
          const int layer = uniform_int(rng, 0, 1);
          std::vector<int> perm(w.layers[layer].bias.size());
          std::iota(perm.begin(), perm.end(), 0);
          std::shuffle(perm.begin(), perm.end(), rng);
          twin = permute_hidden_units(w, layer, perm);
        } else {
          twin = insert_identity_layer(w, uniform_int(rng, 0, 1));
        }
        const ScalarField f = ScalarField::mlp(m, w);
        const ScalarField g = ScalarField::mlp(m, twin);
        const Point p = random_point(m, rng), o = random_point(m, rng);
        const OrthonormalFrame frame = random_frame(m, p, rng);
        const double gap = report_gap(rig(f, p, o, frame, q), rig(g, p, o, frame, q));
        return record(m, f, p, o, gap);
      },
      "Certified only for constructed equivalent pairs (hidden-unit "
      "permutations, inserted identity layers); functional equivalence in "
      "general is not tested.");
}

AxiomReport check_linearity(const AxiomCheckSpec& spec) {
  // One node set for every field, so the identity is exact up to rounding.
  const Quadrature q = Quadrature::fixed(32);
  return drive(
      spec, kAllFamilies,
      [&](ManifoldKind kind, int index, std::mt19937_64& rng) {
        const ManifoldModel m = draw_model(kind, rng, 2, 5);
        const ScalarField f = mlp_field(m, rng);
        const ScalarField g =
            index % 2 ? analytic_field(m, rng) : mlp_field(m, rng);
        double a = 1.0, b = 0.0;
        if (index > 0) {
          a = uniform(rng, -2.0, 2.0);
          b = uniform(rng, -2.0, 2.0);
        }
        const ScalarField h = linear_combination(a, f, b, g);
        const Point p = random_point(m, rng), o = random_point(m, rng);
        const OrthonormalFrame frame = random_frame(m, p, rng);
        const Vec lhs = rig(h, p, o, frame, q).attributions;
        const Vec rhs = a * rig(f, p, o, frame, q).attributions +
                        b * rig(g, p, o, frame, q).attributions;
        return record(m, h, p, o, max_abs(lhs - rhs));
      },
      "");
}

AxiomReport check_sensitivity(const AxiomCheckSpec& spec) {
  return drive(
      spec, kAllFamilies,
      [](ManifoldKind kind, int, std::mt19937_64& rng) {
        return sensitivity_trial(kind, rng);
      },
      "Curved cases use configurations where dF(P_t u) = 0 along the whole "
      "geodesic by symmetry: z-only fields on a meridian with u = d/dphi, "
      "y-only fields on a vertical line with u = d/dx.");
}

AxiomReport check_symmetry_invariance(const AxiomCheckSpec& spec) {
  return drive(
      spec, {ManifoldKind::kEuclidean},
      [](ManifoldKind kind, int, std::mt19937_64& rng) {
        const ManifoldModel m = draw_model(kind, rng, 2, 6);
        const int i = uniform_int(rng, 0, m.dim() - 1);
        int j = uniform_int(rng, 0, m.dim() - 2);
        if (j >= i) ++j;
        const Isometry swap = Isometry::coordinate_swap(m.dim(), i, j);
        const ScalarField g = mlp_field(m, rng);
        const ScalarField f =
            linear_combination(1.0, g, 1.0, ScalarField::compose(g, swap));
        const Point x = random_point(m, rng);
        Point o = random_point(m, rng);
        o.coords[j] = o.coords[i];
        const Point sx = apply_isometry(m, swap, x);
        const OrthonormalFrame ex = orthonormal_frame(m, x);
        const OrthonormalFrame esx = orthonormal_frame(m, sx);
        const double gap = std::abs(rig(f, x, o, ex).attributions[i] -
                                    rig(f, sx, o, esx).attributions[j]);
        return record(m, f, x, o, gap);
      },
      "");
}

AxiomReport check_completeness(const AxiomCheckSpec& spec) {
  const size_t families = spec.manifold ? 1 : kAllFamilies.size();
  return drive(
      spec, kAllFamilies,
      [families](ManifoldKind kind, int index, std::mt19937_64& rng) {
        const ManifoldModel m = draw_model(kind, rng, 2, 6);
        const bool analytic = (index / families) % 2 == 0;
        const ScalarField f =
            analytic ? analytic_field(m, rng) : mlp_field(m, rng);
        const Point p = random_point(m, rng), o = random_point(m, rng);
        const AttributionReport r = rig(f, p, o, random_frame(m, p, rng));
        return record(m, f, p, o, r.completeness_residual);
      },
      "");
}

AxiomReport check_isometry_invariance(const AxiomCheckSpec& spec) {
  return drive(
      spec, kAllFamilies,
      [](ManifoldKind kind, int index, std::mt19937_64& rng) {
        const ManifoldModel m = draw_model(kind, rng, 2, 5);
        const ScalarField f =
            index % 2 ? analytic_field(m, rng) : mlp_field(m, rng);
        const Isometry s = random_isometry(m, rng);
        const ScalarField pushed = ScalarField::compose(f, s.inverse());
        const Point p = random_point(m, rng), o = random_point(m, rng);
        const OrthonormalFrame frame = random_frame(m, p, rng);
        OrthonormalFrame moved{apply_isometry(m, s, p), {}};
        for (const TangentVector& u : frame.vectors) {
          moved.vectors.push_back(differential_of_isometry(m, s, u));
        }
        const AttributionMatrix lhs = alpha_matrix(f, p, o, frame);
        const AttributionMatrix rhs =
            alpha_matrix(pushed, moved.base, apply_isometry(m, s, o), moved);
        return record(m, f, p, o, max_abs(lhs.entries - rhs.entries));
      },
      "");
}

AxiomReport check_euclidean_restriction(const AxiomCheckSpec& spec) {
  return drive(
      spec, {ManifoldKind::kEuclidean},
      [](ManifoldKind kind, int, std::mt19937_64& rng) {
        const ManifoldModel m = draw_model(kind, rng, 2, 8);
        const ScalarField f = ScalarField::mlp(m, draw_mlp(m.dim(), rng, 16));
        const Point x = random_point(m, rng), base = random_point(m, rng);
        const OrthonormalFrame frame = random_frame(m, x, rng);
        const double gap = max_abs(rig(f, x, base, frame).attributions -
                                   ig(f, x, base, frame).attributions);
        return record(m, f, x, base, gap);
      },
      "");
}

AxiomReport check_eigen_bound(const AxiomCheckSpec& spec) {
  auto violations = std::make_shared<std::atomic<long>>(0);
  AxiomReport report = drive(
      spec, kAllFamilies,
      [violations](ManifoldKind kind, int index, std::mt19937_64& rng) {
        const ManifoldModel m = draw_model(kind, rng, 2, 6);
        const ScalarField f =
            index % 2 ? analytic_field(m, rng) : mlp_field(m, rng);
        const Point p = random_point(m, rng), o = random_point(m, rng);
        const AttributionMatrix a = alpha_matrix(f, p, o, orthonormal_frame(m, p));
        const EigenAttribution eig = eigen_attributions(a);
        const AttributionMatrix again = alpha_matrix(f, p, o, eig.frame);
        double residual =
            max_abs(again.entries.diagonal() - eig.eigenvalues);
        const BoundCheck bound =
            attribution_bound_check(a, kBoundSamples, rng());
        *violations += bound.violations;
        residual = std::max(
            residual, std::max(0.0, bound.max_abs_attribution - bound.lambda_max));
        return record(m, f, p, o, residual);
      },
      "Residual is the larger of the eigenframe re-evaluation error and the "
      "excess of |alpha(u, u)| over |lambda_n| on 10^4 random unit directions "
      "per trial.");
  report.notes += " Bound violations (slack 1e-10): " +
                  std::to_string(violations->load()) + ".";
  if (*violations > 0) report.pass = false;
  return report;
}

AxiomReport run_check(const AxiomCheckSpec& spec) {
  switch (spec.axiom) {
    case AxiomKind::kImplementation: return check_implementation_invariance(spec);
    case AxiomKind::kLinearity: return check_linearity(spec);
    case AxiomKind::kSensitivity: return check_sensitivity(spec);
    case AxiomKind::kSymmetryInvariance: return check_symmetry_invariance(spec);
    case AxiomKind::kCompleteness: return check_completeness(spec);
    case AxiomKind::kIsometryInvariance: return check_isometry_invariance(spec);
    case AxiomKind::kEuclideanRestriction: return check_euclidean_restriction(spec);
    case AxiomKind::kEigenBound: return check_eigen_bound(spec);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown axiom");
}

std::vector<AxiomCheckSpec> default_suite(std::uint64_t seed) {
  auto make = [seed](AxiomKind axiom, int trials,
                     std::optional<ManifoldKind> manifold = std::nullopt) {
    AxiomCheckSpec s;
    s.axiom = axiom;
    s.tolerance = default_tolerance(axiom, manifold);
    s.trials = trials;
    s.seed = seed;
    s.manifold = manifold;
    return s;
  };
  return {
      make(AxiomKind::kImplementation, 20),
      make(AxiomKind::kLinearity, 50),
      make(AxiomKind::kSensitivity, 30),
      make(AxiomKind::kSymmetryInvariance, 50),
      make(AxiomKind::kCompleteness, 120),
      make(AxiomKind::kIsometryInvariance, 20, ManifoldKind::kEuclidean),
      make(AxiomKind::kIsometryInvariance, 20, ManifoldKind::kSphere2),
      make(AxiomKind::kIsometryInvariance, 20, ManifoldKind::kHalfPlane2),
      make(AxiomKind::kEuclideanRestriction, 100),
      make(AxiomKind::kEigenBound, 30),
  };
}

std::vector<AxiomReport> run_suite(const std::vector<AxiomCheckSpec>& specs,
                                   int threads) {
  std::vector<AxiomReport> reports(specs.size());
  std::vector<std::exception_ptr> errors(specs.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < specs.size(); i = next++) {
      try {
        reports[i] = run_check(specs[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int n = std::clamp(threads, 1, static_cast<int>(std::max<size_t>(specs.size(), 1)));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < n; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return reports;
}

}  // namespace rig
