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

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "half_plane.h"
#include "rig/curve.h"
#include "rig/quadrature.h"

namespace rig {
namespace {

using Complex = std::complex<double>;

constexpr double kResidualStep = 1e-5;

}  // namespace

Curve::Curve(ManifoldModel m, Evaluator position, Evaluator velocity,
             bool is_geodesic)
    : m_(std::move(m)),
      position_(std::move(position)),
      velocity_(std::move(velocity)),
      is_geodesic_(is_geodesic) {
  start_ = {position_(0.0)};
  end_ = {position_(1.0)};
  check_point(m_, start_);
  check_point(m_, end_);
}

Curve::Curve(ManifoldModel m, Evaluator position, Evaluator velocity,
             bool is_geodesic, Point start, Point end)
    : m_(std::move(m)),
      position_(std::move(position)),
      velocity_(std::move(velocity)),
      start_(std::move(start)),
      end_(std::move(end)),
      is_geodesic_(is_geodesic) {
  check_point(m_, start_);
  check_point(m_, end_);
}

Curve Curve::constant(ManifoldModel m, const Point& p) {
  check_point(m, p);
  const int d = m.coord_dim();
  Curve c(
      m, [x = p.coords](double) { return x; },
      [d](double) { return Vec(Vec::Zero(d)); }, true);
  c.is_constant_ = true;
  return c;
}

Point Curve::position(double t) const { return {position_(t)}; }

TangentVector Curve::velocity(double t) const {
  return {position(t), velocity_(t)};
}

Curve geodesic_between(const ManifoldModel& m, const Point& p,
                       const Point& o) {
  check_point(m, p);
  check_point(m, o);
  if (p.coords == o.coords) return Curve::constant(m, p);
  switch (m.kind()) {
    case ManifoldKind::kEuclidean: {
      const Vec a = p.coords, d = o.coords - p.coords;
      return Curve(
          m, [a, d](double t) { return Vec(a + t * d); },
          [d](double) { return d; }, true, p, o);
    }
    case ManifoldKind::kSphere2: {
      const TangentVector v = log_map(m, p, o);
      const double angle = v.components.norm();
      if (angle == 0.0) return Curve::constant(m, p);
      const Vec a = p.coords, w = v.components / angle;
      return Curve(
          m,
          [a, w, angle](double t) {
            Vec x = std::cos(t * angle) * a + std::sin(t * angle) * w;
            return Vec(x / x.norm());
          },
          [a, w, angle](double t) {
            return Vec(angle *
                       (-std::sin(t * angle) * a + std::cos(t * angle) * w));
          },
          true, p, o);
    }
    case ManifoldKind::kHalfPlane2: {
      // Moebius image of the imaginary axis: covers vertical lines and
      // semicircles centred on the boundary without special cases.
      const TangentVector v = log_map(m, p, o);
      const double x0 = p.coords[0], y0 = p.coords[1];
      const double speed = v.components.norm() / y0;
      if (speed == 0.0) return Curve::constant(m, p);
      const double a = std::atan2(v.components[1], v.components[0]);
      return Curve(
          m,
          [x0, y0, a, speed](double t) {
            Complex z, dz;
            internal::half_plane_geodesic_from_i(a, speed * t, &z, &dz);
            Vec out(2);
            out << x0 + y0 * z.real(), y0 * z.imag();
            return out;
          },
          [y0, a, speed](double t) {
            Complex z, dz;
            internal::half_plane_geodesic_from_i(a, speed * t, &z, &dz);
            Vec out(2);
            out << y0 * speed * dz.real(), y0 * speed * dz.imag();
            return out;
          },
          true, p, o);
    }
  }
  return Curve::constant(m, p);
}

Curve reparametrize(const Curve& c, std::function<double(double)> phi,
                    std::function<double(double)> dphi) {
  return Curve(
      c.manifold(), [c, phi](double t) { return c.position(phi(t)).coords; },
      [c, phi, dphi](double t) {
        return Vec(dphi(t) * c.velocity(phi(t)).components);
      },
      false);
}

double curve_length(const Curve& c, int nodes) {
  if (c.is_constant()) return 0.0;
  const QuadratureNodes q =
      quadrature_nodes(QuadratureRule::kGaussLegendre, nodes);
  double s = 0.0;
  for (size_t k = 0; k < q.t.size(); ++k) {
    s += q.w[k] * norm(c.manifold(), c.velocity(q.t[k]));
  }
  return s;
}

double geodesic_residual(const Curve& c, double t) {
  const ManifoldModel& m = c.manifold();
  if (c.is_constant()) return 0.0;
  const double h = kResidualStep;
  t = std::clamp(t, h, 1.0 - h);
  const Point here = c.position(t);
  const WorkingChart chart = chart_at(m, here);
  auto chart_velocity = [&](double s) {
    const TangentVector v = c.velocity(s);
    return chart.vector_to_chart(v.base, v.components);
  };
  const Vec xd = chart_velocity(t);
  const Vec xdd = (chart_velocity(t + h) - chart_velocity(t - h)) / (2.0 * h);
  const ChristoffelSymbols gamma =
      christoffel_in_chart(m, chart, chart.to_chart(here));
  return (xdd + gamma.contract(xd, xd)).norm();
}

namespace {

// Wraps chart differences so that Sphere2 longitudes stay in (-pi, pi].
Vec chart_difference(ManifoldKind kind, const Vec& a, const Vec& b) {
  Vec d = a - b;
  if (kind == ManifoldKind::kSphere2) {
    d[1] = std::remainder(d[1], 2.0 * std::numbers::pi);
  }
  return d;
}

// RK4 integration of x'' = -Gamma(x)(x', x') over [0, 1].
Vec shoot(const ManifoldModel& m, const WorkingChart& chart, const Vec& x0,
          const Vec& v0, int steps) {
  const int n = m.dim();
  Vec state(2 * n);
  state << x0, v0;
  auto rhs = [&](const Vec& s) {
    const Vec x = s.head(n), v = s.tail(n);
    Vec out(2 * n);
    out << v, -christoffel_in_chart(m, chart, x).contract(v, v);
    return out;
  };
  const double h = 1.0 / steps;
  for (int i = 0; i < steps; ++i) {
    const Vec k1 = rhs(state);
    const Vec k2 = rhs(state + 0.5 * h * k1);
    const Vec k3 = rhs(state + 0.5 * h * k2);
    const Vec k4 = rhs(state + h * k3);
    state += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return state.head(n);
}

}  // namespace

ShootingResult shoot_geodesic(const ManifoldModel& m, const Point& p,
                              const Point& o, int steps, int max_iterations) {
  check_point(m, p);
  check_point(m, o);
  if (on_cut_locus(m, p, o)) {
    throw Error(ErrorCode::kCutLocusAmbiguity,
                "shooting between antipodal sphere points");
  }
  // The chart must stay clear of the region the geodesic sweeps; on the
  // sphere that is the normalised chord from p to o.
  std::vector<Point> samples;
  for (int i = 0; i <= 32; ++i) {
    const double s = i / 32.0;
    Vec x = (1.0 - s) * p.coords + s * o.coords;
    if (m.kind() == ManifoldKind::kSphere2) x /= x.norm();
    samples.push_back({x});
  }
  const WorkingChart chart = chart_avoiding(m, samples);
  const Vec xp = chart.to_chart(p), xo = chart.to_chart(o);

  ShootingResult result;
  Vec v = chart_difference(m.kind(), xo, xp);
  // Long half-plane shots can leave the chart under RK4; such guesses count
  // as failed evaluations, and both the start and the Newton steps back off.
  auto residual = [&](const Vec& guess, Vec* out) {
    try {
      *out = chart_difference(m.kind(), shoot(m, chart, xp, guess, steps), xo);
    } catch (const Error&) {
      return false;
    }
    return out->allFinite();
  };
  Vec r;
  for (int i = 0; i < 60 && !residual(v, &r); ++i) v *= 0.5;
  if (!r.allFinite() || r.size() == 0) {
    throw Error(ErrorCode::kInvalidCurve, "shooting start left the chart");
  }
  result.residual = r.norm();
  const int n = m.dim();
  while (result.residual > m.params().bvp_tol &&
         result.iterations < max_iterations) {
    Mat jac(n, n);
    const double step = 1e-7 * std::max(1.0, v.norm());
    bool ok = true;
    for (int j = 0; j < n && ok; ++j) {
      Vec dv = Vec::Zero(n);
      dv[j] = step;
      Vec plus, minus;
      ok = residual(v + dv, &plus) && residual(v - dv, &minus);
      if (ok) jac.col(j) = (plus - minus) / (2.0 * step);
    }
    if (!ok) break;
    const Vec delta = jac.fullPivLu().solve(r);
    double lambda = 1.0;
    bool accepted = false;
    for (int halvings = 0; halvings < 30 && !accepted; ++halvings) {
      const Vec candidate = v - lambda * delta;
      Vec rc;
      if (residual(candidate, &rc) && rc.norm() < result.residual) {
        v = candidate;
        r = rc;
        accepted = true;
      }
      lambda *= 0.5;
    }
    ++result.iterations;
    if (!accepted) break;
    result.residual = r.norm();
  }
  result.initial_velocity =
      make_tangent(m, p, chart.vector_from_chart(p, v));
  return result;
}

}  // namespace rig
