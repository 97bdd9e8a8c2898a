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

#include "rig/attribution.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>

namespace rig {
namespace {

constexpr double kFrameTol = 1e-10;
constexpr double kBaseTol = 1e-10;
constexpr double kSignThreshold = 1e-12;

void check_frame(const ManifoldModel& m, const OrthonormalFrame& frame,
                 const Point& at) {
  check_point(m, frame.base);
  if (static_cast<int>(frame.vectors.size()) != m.dim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "frame has " + std::to_string(frame.vectors.size()) +
                    " vectors on a " + std::to_string(m.dim()) +
                    "-dimensional manifold");
  }
  if ((frame.base.coords - at.coords).cwiseAbs().maxCoeff() > kBaseTol) {
    throw Error(ErrorCode::kInvalidArgument,
                "frame is not based at the explained point");
  }
  for (const TangentVector& u : frame.vectors) check_tangent(m, u);
  const double defect = frame_defect(m, frame);
  if (!(defect <= kFrameTol)) {
    std::ostringstream msg;
    msg << "frame is not orthonormal (defect " << defect << ")";
    throw Error(ErrorCode::kInvalidArgument, msg.str());
  }
}

void check_same_manifold(const ScalarField& f, const ManifoldModel& m) {
  if (!(f.manifold().kind() == m.kind() && f.manifold().dim() == m.dim())) {
    throw Error(ErrorCode::kDimensionMismatch,
                "field lives on " + f.manifold().name() + ", not " + m.name());
  }
}

TangentVector checked_velocity(const Curve& c, double t) {
  TangentVector v = c.velocity(t);
  if (!v.components.allFinite()) {
    throw Error(ErrorCode::kInvalidCurve,
                "velocity is not finite at t = " + std::to_string(t));
  }
  if (!c.is_constant() && norm(c.manifold(), v) == 0.0) {
    throw Error(ErrorCode::kInvalidCurve,
                "velocity vanishes at t = " + std::to_string(t));
  }
  return v;
}

}  // namespace

const char* method_name(AttributionMethod method) {
  switch (method) {
    case AttributionMethod::kIG:
      return "IG";
    case AttributionMethod::kRIG:
      return "RIG";
    case AttributionMethod::kGenericBAM:
      return "GenericBAM";
    case AttributionMethod::kEigenRIG:
      return "EigenRIG";
  }
  return "unknown";
}

AttributionMethod parse_method(const std::string& name) {
  for (AttributionMethod m :
       {AttributionMethod::kIG, AttributionMethod::kRIG,
        AttributionMethod::kGenericBAM, AttributionMethod::kEigenRIG}) {
    if (name == method_name(m)) return m;
  }
  throw Error(ErrorCode::kParseError, "unknown attribution method " + name);
}

AttributionReport ig(const ScalarField& f, const Point& x,
                     const Point& baseline, const OrthonormalFrame& basis,
                     const Quadrature& q) {
  const ManifoldModel& m = f.manifold();
  if (m.kind() != ManifoldKind::kEuclidean) {
    throw Error(ErrorCode::kWrongManifold,
                "integrated gradients is defined on Euclidean space only, not " +
                    m.name());
  }
  check_point(m, x);
  check_point(m, baseline);
  check_frame(m, basis, x);
  const int n = m.dim();
  const Vec diff = x.coords - baseline.coords;
  const QuadratureResult integral =
      integrate(q, [&](const QuadratureNodes& nodes) {
        Mat acc = Mat::Zero(n, 1);
        for (size_t k = 0; k < nodes.t.size(); ++k) {
          const Point at{Vec(baseline.coords + nodes.t[k] * diff)};
          const Vec grad = f.gradient(at).components;
          for (int i = 0; i < n; ++i) {
            acc(i, 0) += nodes.w[k] * grad.dot(basis.vectors[i].components);
          }
        }
        return acc;
      });

  AttributionReport report;
  report.method = AttributionMethod::kIG;
  report.manifold = m;
  report.p = x;
  report.o = baseline;
  report.frame = basis;
  report.attributions.resize(n);
  for (int i = 0; i < n; ++i) {
    report.attributions[i] =
        diff.dot(basis.vectors[i].components) * integral.value(i, 0);
  }
  report.value_p = f.value(x);
  report.value_o = f.value(baseline);
  report.completeness_residual = std::abs(
      report.attributions.sum() - (report.value_p - report.value_o));
  report.error_term = -report.value_o;
  report.diagnostics.quadrature_nodes = integral.nodes;
  report.diagnostics.transport_mode = transport_mode_name(TransportMode::kIdentity);
  report.diagnostics.geodesic_length = diff.norm();
  return report;
}

double bam_along_curve(const ScalarField& f, const Curve& c,
                       const TangentVector& u, const Quadrature& q,
                       const TransportOptions& transport) {
  check_same_manifold(f, c.manifold());
  if (c.is_constant()) return 0.0;
  const ManifoldModel& m = c.manifold();
  const QuadratureResult r = integrate(q, [&](const QuadratureNodes& nodes) {
    double acc = 0.0;
    for (size_t k = 0; k < nodes.t.size(); ++k) {
      const TangentVector moved =
          parallel_transport(c, u, nodes.t[k], transport);
      const TangentVector vel = checked_velocity(c, nodes.t[k]);
      acc -= nodes.w[k] * f.differential(moved) * inner(m, moved, vel);
    }
    Mat out(1, 1);
    out(0, 0) = acc;
    return out;
  });
  return r.value(0, 0);
}

AttributionMatrix alpha_matrix_along(const ScalarField& f, const Curve& c,
                                     const OrthonormalFrame& frame,
                                     const Quadrature& q,
                                     const TransportOptions& transport) {
  const ManifoldModel& m = c.manifold();
  check_same_manifold(f, m);
  check_frame(m, frame, c.start());
  const int n = m.dim();

  AttributionMatrix out;
  out.manifold = m;
  out.base = frame.base;
  out.frame = frame;
  out.curve_info.start = c.start();
  out.curve_info.end = c.end();
  out.value_p = f.value(c.start());
  out.value_o = f.value(c.end());
  if (c.is_constant()) {
    out.entries = Mat::Zero(n, n);
    out.curve_info.transport = TransportMode::kIdentity;
    return out;
  }

  double defect = 0.0;
  TransportMode mode = TransportMode::kIdentity;
  // Both node tables a_i(t_k) = dF(P u_i) and b_j(t_k) = g(P u_j, c') come
  // from one frame transport per node.
  const QuadratureResult r = integrate(q, [&](const QuadratureNodes& nodes) {
    Mat acc = Mat::Zero(n, n);
    Vec a(n), b(n);
    for (size_t k = 0; k < nodes.t.size(); ++k) {
      const double t = nodes.t[k];
      const TransportResult moved =
          transport_vectors(c, frame.vectors, t, transport);
      mode = moved.mode;
      const TangentVector vel = checked_velocity(c, t);
      const TangentVector grad = f.gradient(moved.vectors.front().base);
      for (int i = 0; i < n; ++i) {
        a[i] = inner(m, grad, moved.vectors[i]);
        b[i] = inner(m, moved.vectors[i], vel);
      }
      OrthonormalFrame moved_frame{vel.base, moved.vectors};
      defect = std::max(defect, frame_defect(m, moved_frame));
      acc.noalias() -= nodes.w[k] * a * b.transpose();
    }
    return acc;
  });
  out.entries = r.value;
  out.curve_info.quadrature_nodes = r.nodes;
  out.curve_info.quadrature_delta = r.delta;
  out.curve_info.transport = mode;
  out.curve_info.frame_defect = defect;
  out.curve_info.length = curve_length(c);
  return out;
}

AttributionMatrix alpha_matrix(const ScalarField& f, const Point& p,
                               const Point& o, const OrthonormalFrame& frame,
                               const Quadrature& q) {
  const ManifoldModel& m = f.manifold();
  check_point(m, p);
  check_point(m, o);
  const Curve c = geodesic_between(m, p, o);
  AttributionMatrix out = alpha_matrix_along(f, c, frame, q);
  double residual = 0.0;
  if (m.kind() != ManifoldKind::kEuclidean) {
    for (double t : {0.25, 0.5, 0.75}) {
      residual = std::max(residual, geodesic_residual(c, t));
    }
  }
  out.curve_info.geodesic_residual = residual;
  return out;
}

AttributionReport report_from_matrix(const AttributionMatrix& a,
                                     AttributionMethod method) {
  AttributionReport report;
  report.method = method;
  report.manifold = a.manifold;
  report.p = a.curve_info.start;
  report.o = a.curve_info.end;
  report.frame = a.frame;
  report.attributions = a.entries.diagonal();
  report.alpha = a.entries;
  report.value_p = a.value_p;
  report.value_o = a.value_o;
  report.completeness_residual =
      std::abs(report.attributions.sum() - (a.value_p - a.value_o));
  report.error_term = -a.value_o;
  report.diagnostics.quadrature_nodes = a.curve_info.quadrature_nodes;
  report.diagnostics.geodesic_residual = a.curve_info.geodesic_residual;
  report.diagnostics.transport_mode = transport_mode_name(a.curve_info.transport);
  report.diagnostics.geodesic_length = a.curve_info.length;
  report.diagnostics.frame_defect = a.curve_info.frame_defect;
  return report;
}

AttributionReport rig(const ScalarField& f, const Point& p, const Point& o,
                      const OrthonormalFrame& frame, const Quadrature& q) {
  return report_from_matrix(alpha_matrix(f, p, o, frame, q),
                            AttributionMethod::kRIG);
}

AttributionMatrix symmetrize(const AttributionMatrix& a) {
  AttributionMatrix out = a;
  out.entries = 0.5 * (a.entries + a.entries.transpose());
  return out;
}

EigenAttribution eigen_attributions(const AttributionMatrix& a) {
  const Mat sym = 0.5 * (a.entries + a.entries.transpose());
  const auto n = sym.rows();
  EigenAttribution out;
  if (n == 0 || sym.cwiseAbs().maxCoeff() == 0.0) {
    out.eigenvalues = Vec::Zero(n);
    out.coefficients = Mat::Identity(n, n);
    out.frame = a.frame;
    return out;
  }
  Eigen::SelfAdjointEigenSolver<Mat> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::kEigenSolverFailure,
                "symmetric eigen-decomposition did not converge");
  }
  const Vec& values = solver.eigenvalues();
  std::vector<Eigen::Index> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) {
                     const double ai = std::abs(values[i]);
                     const double aj = std::abs(values[j]);
                     if (ai != aj) return ai < aj;
                     return values[i] < values[j];
                   });
  out.eigenvalues.resize(n);
  out.coefficients.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    Vec v = solver.eigenvectors().col(order[k]);
    for (Eigen::Index i = 0; i < n; ++i) {
      if (std::abs(v[i]) > kSignThreshold) {
        if (v[i] < 0.0) v = -v;
        break;
      }
    }
    out.eigenvalues[k] = values[order[k]];
    out.coefficients.col(k) = v;
    out.residual = std::max(
        out.residual, (sym * v - out.eigenvalues[k] * v).norm());
  }
  out.frame = rotate_frame(a.frame, out.coefficients);
  return out;
}

AttributionReport eigen_rig(const ScalarField& f, const Point& p,
                            const Point& o, const Quadrature& q) {
  const ManifoldModel& m = f.manifold();
  const AttributionMatrix first = alpha_matrix(f, p, o, orthonormal_frame(m, p), q);
  const EigenAttribution eig = eigen_attributions(first);
  AttributionReport report = report_from_matrix(
      alpha_matrix(f, p, o, eig.frame, q), AttributionMethod::kEigenRIG);
  report.eigenvalues = eig.eigenvalues;
  report.diagnostics.eigen_residual = eig.residual;
  return report;
}

AttributionMatrix change_frame(const AttributionMatrix& a, const Mat& R) {
  AttributionMatrix out = a;
  out.frame = rotate_frame(a.frame, R);
  out.entries = R.transpose() * a.entries * R;
  return out;
}

BoundCheck attribution_bound_check(const AttributionMatrix& a, int samples,
                                   std::uint64_t seed, double slack) {
  const EigenAttribution eig = eigen_attributions(a);
  const auto n = a.entries.rows();
  BoundCheck out;
  out.samples = samples;
  out.lambda_max = n ? std::abs(eig.eigenvalues[n - 1]) : 0.0;
  auto ratio = [&](double value) {
    if (out.lambda_max > 0.0) return std::abs(value) / out.lambda_max;
    return value == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  };
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Vec c(n);
  for (int s = 0; s < samples; ++s) {
    for (Eigen::Index i = 0; i < n; ++i) c[i] = normal(rng);
    const double len = c.norm();
    if (len == 0.0) continue;
    c /= len;
    const double value = c.dot(a.entries * c);
    out.max_abs_attribution = std::max(out.max_abs_attribution, std::abs(value));
    out.max_ratio = std::max(out.max_ratio, ratio(value));
    if (std::abs(value) > out.lambda_max + slack) ++out.violations;
  }
  if (n) {
    const Vec top = eig.coefficients.col(n - 1);
    out.top_eigenvector_ratio = ratio(top.dot(a.entries * top));
  }
  return out;
}

std::vector<AttributionReport> rig_batch(const std::vector<AttributionJob>& jobs,
                                         int threads) {
  std::vector<std::optional<AttributionReport>> results(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < jobs.size(); i = next++) {
      try {
        const AttributionJob& job = jobs[i];
        results[i] = rig(job.field, job.p, job.o, job.frame, job.quadrature);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int count =
      std::max(1, std::min<int>(threads, static_cast<int>(jobs.size())));
  std::vector<std::thread> pool;
  for (int i = 1; i < count; ++i) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  std::vector<AttributionReport> out;
  out.reserve(jobs.size());
  for (size_t i = 0; i < jobs.size(); ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    out.push_back(std::move(*results[i]));
  }
  return out;
}

}  // namespace rig
