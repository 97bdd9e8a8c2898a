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

#include "rig/transport.h"

#include <algorithm>
#include <cmath>
#include <string>

namespace rig {
namespace {

constexpr double kMinChartClearance = 0.1;
constexpr int kChartSamples = 65;
constexpr double kBaseTol = 1e-10;

// Rotation by +90 degrees in the tangent plane; g-isometric on the built-in
// 2-manifolds (conformal metric, or the cross product on the sphere).
Vec quarter_turn(const ManifoldModel& m, const Point& p, const Vec& v) {
  if (m.kind() == ManifoldKind::kSphere2) {
    const Eigen::Vector3d x(p.coords[0], p.coords[1], p.coords[2]);
    const Eigen::Vector3d w(v[0], v[1], v[2]);
    return Vec(x.cross(w));
  }
  Vec out(2);
  out << -v[1], v[0];
  return out;
}

void check_velocity(const TangentVector& v, double t) {
  if (!v.components.allFinite() || !v.base.coords.allFinite()) {
    throw Error(ErrorCode::kInvalidCurve,
                "curve is not finite at t = " + std::to_string(t));
  }
}

TransportResult closed_form(const Curve& c, std::span<const TangentVector> u,
                            double t) {
  const ManifoldModel& m = c.manifold();
  if (!c.is_geodesic() || m.dim() != 2) {
    throw Error(ErrorCode::kInvalidCurve,
                "closed-form transport needs a geodesic on a 2-manifold");
  }
  const TangentVector v0 = c.velocity(0.0), vt = c.velocity(t);
  check_velocity(v0, 0.0);
  check_velocity(vt, t);
  const double s0 = norm(m, v0), st = norm(m, vt);
  if (!(s0 > 0.0) || !(st > 0.0)) {
    throw Error(ErrorCode::kInvalidCurve,
                "velocity vanishes on a non-constant geodesic");
  }
  const Vec t0 = v0.components / s0, n0 = quarter_turn(m, v0.base, t0);
  const Vec tt = vt.components / st, nt = quarter_turn(m, vt.base, tt);
  TransportResult result;
  result.mode = TransportMode::kClosedForm;
  for (const TangentVector& x : u) {
    const double a = inner(m, v0.base, x.components, t0);
    const double b = inner(m, v0.base, x.components, n0);
    result.vectors.push_back(make_tangent(m, vt.base, a * tt + b * nt));
  }
  return result;
}

// Fixed-step RK4 on dV^k/ds = -Gamma^k_ij(c(s)) c'^i(s) V^j over [0, t];
// columns of the returned matrix are chart components.
Mat rk4_transport(const Curve& c, const WorkingChart& chart, const Mat& v0,
                  double t, int steps) {
  const ManifoldModel& m = c.manifold();
  auto rhs = [&](double s, const Mat& v) {
    const TangentVector vel = c.velocity(s);
    check_velocity(vel, s);
    const Vec xd = chart.vector_to_chart(vel.base, vel.components);
    const ChristoffelSymbols gamma =
        christoffel_in_chart(m, chart, chart.to_chart(vel.base));
    Mat out(v.rows(), v.cols());
    for (Eigen::Index j = 0; j < v.cols(); ++j) {
      out.col(j) = -gamma.contract(xd, v.col(j));
    }
    return out;
  };
  Mat v = v0;
  const double h = t / steps;
  for (int i = 0; i < steps; ++i) {
    const double s = i * h;
    const Mat k1 = rhs(s, v);
    const Mat k2 = rhs(s + 0.5 * h, v + 0.5 * h * k1);
    const Mat k3 = rhs(s + 0.5 * h, v + 0.5 * h * k2);
    const Mat k4 = rhs(s + h, v + h * k3);
    v += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return v;
}

TransportResult ode(const Curve& c, std::span<const TangentVector> u, double t,
                    const TransportOptions& options) {
  const ManifoldModel& m = c.manifold();
  const NumericParams& params = m.params();
  const WorkingChart chart = chart_for_curve(c, t);
  const Point start = c.position(0.0), end = c.position(t);
  Mat v0(m.dim(), static_cast<Eigen::Index>(u.size()));
  for (size_t j = 0; j < u.size(); ++j) {
    v0.col(static_cast<Eigen::Index>(j)) =
        chart.vector_to_chart(start, u[j].components);
  }
  auto to_ambient = [&](const Mat& chart_vectors) {
    Mat out(m.coord_dim(), chart_vectors.cols());
    for (Eigen::Index j = 0; j < chart_vectors.cols(); ++j) {
      out.col(j) = chart.vector_from_chart(end, chart_vectors.col(j));
    }
    return out;
  };

  int steps = options.steps > 0 ? options.steps : params.transport_steps;
  Mat current = to_ambient(rk4_transport(c, chart, v0, t, steps));
  double delta = 0.0;
  if (options.refine) {
    while (2 * steps <= params.max_transport_steps) {
      Mat next = to_ambient(rk4_transport(c, chart, v0, t, 2 * steps));
      delta = next.size() ? (next - current).cwiseAbs().maxCoeff() : 0.0;
      current = std::move(next);
      steps *= 2;
      if (delta < params.transport_tol) break;
    }
  }
  TransportResult result;
  result.mode = TransportMode::kOde;
  result.steps = steps;
  result.last_delta = delta;
  for (Eigen::Index j = 0; j < current.cols(); ++j) {
    result.vectors.push_back(make_tangent(m, end, current.col(j)));
  }
  return result;
}

}  // namespace

const char* transport_mode_name(TransportMode mode) {
  switch (mode) {
    case TransportMode::kAuto:
      return "auto";
    case TransportMode::kIdentity:
      return "identity";
    case TransportMode::kClosedForm:
      return "closed_form";
    case TransportMode::kOde:
      return "ode";
  }
  return "unknown";
}

WorkingChart chart_for_curve(const Curve& c, double t_end) {
  const ManifoldModel& m = c.manifold();
  if (m.kind() != ManifoldKind::kSphere2) return WorkingChart::identity(m);
  std::vector<Point> samples;
  samples.reserve(kChartSamples);
  for (int i = 0; i < kChartSamples; ++i) {
    samples.push_back(c.position(t_end * i / (kChartSamples - 1)));
  }
  double clearance = 0.0;
  WorkingChart chart = chart_avoiding(m, samples, &clearance);
  if (clearance < kMinChartClearance) {
    throw Error(ErrorCode::kInvalidCurve,
                "no spherical chart keeps 0.1 rad clear of the curve");
  }
  return chart;
}

TransportResult transport_vectors(const Curve& c,
                                  std::span<const TangentVector> u, double t,
                                  const TransportOptions& options) {
  const ManifoldModel& m = c.manifold();
  if (!(t >= 0.0 && t <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "transport parameter must lie in [0, 1]");
  }
  for (const TangentVector& x : u) {
    check_tangent(m, x);
    if ((x.base.coords - c.start().coords).cwiseAbs().maxCoeff() > kBaseTol) {
      throw Error(ErrorCode::kInvalidArgument,
                  "transported vector is not based at the curve start");
    }
  }
  TransportMode mode = options.mode;
  if (mode == TransportMode::kAuto) {
    if (m.kind() == ManifoldKind::kEuclidean) {
      mode = TransportMode::kIdentity;
    } else if (c.is_geodesic()) {
      mode = TransportMode::kClosedForm;
    } else {
      mode = TransportMode::kOde;
    }
  }
  if (mode == TransportMode::kIdentity &&
      m.kind() != ManifoldKind::kEuclidean) {
    throw Error(ErrorCode::kInvalidArgument,
                "identity transport is only exact in Euclidean space");
  }
  if (c.is_constant() || t == 0.0 || mode == TransportMode::kIdentity) {
    TransportResult result;
    result.mode = TransportMode::kIdentity;
    const Point end = c.position(t);
    for (const TangentVector& x : u) {
      result.vectors.push_back(m.kind() == ManifoldKind::kEuclidean
                                   ? TangentVector{end, x.components}
                                   : make_tangent(m, end, x.components));
    }
    return result;
  }
  if (mode == TransportMode::kClosedForm) return closed_form(c, u, t);
  return ode(c, u, t, options);
}

TangentVector parallel_transport(const Curve& c, const TangentVector& u,
                                 double t, const TransportOptions& options) {
  return transport_vectors(c, std::span<const TangentVector>(&u, 1), t,
                           options)
      .vectors.front();
}

}  // namespace rig
