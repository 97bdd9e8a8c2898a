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

#include "rig/manifold.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <sstream>

#include "half_plane.h"

namespace rig {
namespace {

constexpr double kSphereNormTol = 1e-12;
constexpr double kSphereTangentTol = 1e-10;
constexpr double kAntipodalSlack = 1e-9;

using Complex = std::complex<double>;

bool all_finite(const Vec& v) { return v.allFinite(); }

std::string describe(const Vec& v) {
  std::ostringstream os;
  os.precision(17);
  os << "[";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) os << ", ";
    os << v[i];
  }
  os << "]";
  return os.str();
}

Eigen::Vector3d as3(const Vec& v) { return Eigen::Vector3d(v[0], v[1], v[2]); }

// Index of the coordinate axis least aligned with v.
int least_aligned_axis(const Eigen::Vector3d& v) {
  int k = 0;
  for (int i = 1; i < 3; ++i) {
    if (std::abs(v[i]) < std::abs(v[k])) k = i;
  }
  return k;
}

Complex to_complex(const Vec& v) { return {v[0], v[1]}; }
Vec from_complex(Complex z) {
  Vec v(2);
  v << z.real(), z.imag();
  return v;
}

}  // namespace

ManifoldModel::ManifoldModel(ManifoldKind kind, int dim, NumericParams params)
    : kind_(kind), dim_(dim), params_(params) {
  if (params_.transport_steps < 1 || params_.max_transport_steps < 1 ||
      !(params_.transport_tol > 0.0) || !(params_.bvp_tol > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "invalid numeric parameters");
  }
}

ManifoldModel ManifoldModel::euclidean(int n, NumericParams params) {
  if (n < 1) {
    throw Error(ErrorCode::kDimensionMismatch,
                "Euclidean dimension must be >= 1, got " + std::to_string(n));
  }
  return ManifoldModel(ManifoldKind::kEuclidean, n, params);
}

ManifoldModel ManifoldModel::sphere2(NumericParams params) {
  return ManifoldModel(ManifoldKind::kSphere2, 2, params);
}

ManifoldModel ManifoldModel::half_plane2(NumericParams params) {
  return ManifoldModel(ManifoldKind::kHalfPlane2, 2, params);
}

ManifoldModel ManifoldModel::with_params(NumericParams params) const {
  return ManifoldModel(kind_, dim_, params);
}

std::string ManifoldModel::name() const {
  switch (kind_) {
    case ManifoldKind::kEuclidean:
      return "euclidean(" + std::to_string(dim_) + ")";
    case ManifoldKind::kSphere2:
      return "sphere2";
    case ManifoldKind::kHalfPlane2:
      return "half_plane2";
  }
  return "unknown";
}

void check_point(const ManifoldModel& m, const Point& p) {
  if (p.coords.size() != m.coord_dim()) {
    throw Error(ErrorCode::kInvalidPoint,
                m.name() + " expects " + std::to_string(m.coord_dim()) +
                    " coordinates, got " + std::to_string(p.coords.size()));
  }
  if (!all_finite(p.coords)) {
    throw Error(ErrorCode::kInvalidPoint,
                "non-finite coordinates " + describe(p.coords));
  }
  switch (m.kind()) {
    case ManifoldKind::kEuclidean:
      return;
    case ManifoldKind::kSphere2:
      if (std::abs(p.coords.norm() - 1.0) > kSphereNormTol) {
        throw Error(ErrorCode::kInvalidPoint,
                    "sphere point is not unit length: " + describe(p.coords));
      }
      return;
    case ManifoldKind::kHalfPlane2:
      if (!(p.coords[1] > 0.0)) {
        throw Error(ErrorCode::kInvalidPoint,
                    "half-plane point needs y > 0: " + describe(p.coords));
      }
      return;
  }
}

Point make_point(const ManifoldModel& m, const Vec& coords,
                 double normalize_slack) {
  Point p{coords};
  if (m.kind() == ManifoldKind::kSphere2 && coords.size() == 3 &&
      all_finite(coords)) {
    const double r = coords.norm();
    if (std::abs(r - 1.0) <= normalize_slack && r > 0.0) {
      p.coords /= r;
    }
  }
  check_point(m, p);
  return p;
}

TangentVector make_tangent(const ManifoldModel& m, const Point& base,
                           const Vec& components) {
  check_point(m, base);
  if (components.size() != m.coord_dim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "tangent vector needs " + std::to_string(m.coord_dim()) +
                    " components, got " + std::to_string(components.size()));
  }
  TangentVector u{base, components};
  if (m.kind() == ManifoldKind::kSphere2) {
    u.components -= base.coords.dot(components) * base.coords;
  }
  return u;
}

void check_tangent(const ManifoldModel& m, const TangentVector& u) {
  check_point(m, u.base);
  if (u.components.size() != m.coord_dim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "tangent vector has " + std::to_string(u.components.size()) +
                    " components, expected " + std::to_string(m.coord_dim()));
  }
  if (!all_finite(u.components)) {
    throw Error(ErrorCode::kInvalidArgument, "non-finite tangent vector");
  }
  if (m.kind() == ManifoldKind::kSphere2 &&
      std::abs(u.components.dot(u.base.coords)) > kSphereTangentTol) {
    throw Error(ErrorCode::kInvalidArgument,
                "sphere tangent vector is not orthogonal to its base point");
  }
}

Mat metric_at(const ManifoldModel& m, const Point& p) {
  check_point(m, p);
  const int d = m.coord_dim();
  switch (m.kind()) {
    case ManifoldKind::kEuclidean:
      return Mat::Identity(d, d);
    case ManifoldKind::kSphere2:
      return Mat::Identity(3, 3) - p.coords * p.coords.transpose();
    case ManifoldKind::kHalfPlane2: {
      const double y = p.coords[1];
      return Mat::Identity(2, 2) / (y * y);
    }
  }
  return {};
}

double inner(const ManifoldModel& m, const Point& p, const Vec& u,
             const Vec& v) {
  switch (m.kind()) {
    case ManifoldKind::kEuclidean:
      return u.dot(v);
    case ManifoldKind::kSphere2:
      return u.dot(v) - u.dot(p.coords) * v.dot(p.coords);
    case ManifoldKind::kHalfPlane2: {
      const double y = p.coords[1];
      return u.dot(v) / (y * y);
    }
  }
  return 0.0;
}

double inner(const ManifoldModel& m, const TangentVector& u,
             const TangentVector& v) {
  return inner(m, u.base, u.components, v.components);
}

double norm(const ManifoldModel& m, const TangentVector& u) {
  return std::sqrt(std::max(0.0, inner(m, u, u)));
}

TangentVector zero_vector(const ManifoldModel& m, const Point& p) {
  return {p, Vec::Zero(m.coord_dim())};
}

WorkingChart WorkingChart::identity(const ManifoldModel& m) {
  WorkingChart chart;
  chart.kind = m.kind();
  return chart;
}

WorkingChart WorkingChart::sphere(const Eigen::Vector3d& axis) {
  const Eigen::Vector3d a = axis.normalized();
  Eigen::Vector3d ref = Eigen::Vector3d::Zero();
  ref[least_aligned_axis(a)] = 1.0;
  const Eigen::Vector3d e1 = (ref - ref.dot(a) * a).normalized();
  const Eigen::Vector3d e2 = a.cross(e1);
  WorkingChart chart;
  chart.kind = ManifoldKind::kSphere2;
  chart.rotation.col(0) = e1;
  chart.rotation.col(1) = e2;
  chart.rotation.col(2) = a;
  return chart;
}

Vec WorkingChart::to_chart(const Point& p) const {
  if (kind != ManifoldKind::kSphere2) return p.coords;
  const Eigen::Vector3d local = rotation.transpose() * as3(p.coords);
  Vec x(2);
  x << std::atan2(std::hypot(local[0], local[1]), local[2]),
      std::atan2(local[1], local[0]);
  return x;
}

Point WorkingChart::from_chart(const Vec& x) const {
  if (kind != ManifoldKind::kSphere2) return {x};
  const double st = std::sin(x[0]);
  const Eigen::Vector3d local(st * std::cos(x[1]), st * std::sin(x[1]),
                              std::cos(x[0]));
  return {Vec(rotation * local)};
}

namespace {

// Ambient coordinate basis (d/dtheta, d/dphi) of a sphere chart at p.
void sphere_basis(const WorkingChart& chart, const Point& p,
                  Eigen::Vector3d* d_theta, Eigen::Vector3d* d_phi,
                  double* sin_theta) {
  const Vec x = chart.to_chart(p);
  const double st = std::sin(x[0]), ct = std::cos(x[0]);
  const double sf = std::sin(x[1]), cf = std::cos(x[1]);
  *d_theta = chart.rotation * Eigen::Vector3d(ct * cf, ct * sf, -st);
  *d_phi = chart.rotation * Eigen::Vector3d(-st * sf, st * cf, 0.0);
  *sin_theta = st;
}

}  // namespace

Vec WorkingChart::vector_to_chart(const Point& p, const Vec& components) const {
  if (kind != ManifoldKind::kSphere2) return components;
  Eigen::Vector3d dt, dp;
  double st;
  sphere_basis(*this, p, &dt, &dp, &st);
  const Eigen::Vector3d v = as3(components);
  Vec out(2);
  out << v.dot(dt), v.dot(dp) / (st * st);
  return out;
}

Vec WorkingChart::vector_from_chart(const Point& p,
                                    const Vec& chart_components) const {
  if (kind != ManifoldKind::kSphere2) return chart_components;
  Eigen::Vector3d dt, dp;
  double st;
  sphere_basis(*this, p, &dt, &dp, &st);
  return Vec(chart_components[0] * dt + chart_components[1] * dp);
}

double WorkingChart::polar_clearance(const Point& p) const {
  if (kind != ManifoldKind::kSphere2) {
    return std::numeric_limits<double>::infinity();
  }
  const double c = std::min(1.0, std::abs(as3(p.coords).dot(rotation.col(2))));
  return std::acos(c);
}

ChristoffelSymbols::ChristoffelSymbols(int n, WorkingChart chart)
    : n_(n), chart_(chart), data_(static_cast<size_t>(n) * n * n, 0.0) {}

Vec ChristoffelSymbols::contract(const Vec& a, const Vec& b) const {
  Vec out = Vec::Zero(n_);
  for (int k = 0; k < n_; ++k) {
    double s = 0.0;
    for (int i = 0; i < n_; ++i) {
      if (a[i] == 0.0) continue;
      for (int j = 0; j < n_; ++j) s += (*this)(k, i, j) * a[i] * b[j];
    }
    out[k] = s;
  }
  return out;
}

ChristoffelSymbols christoffel_in_chart(const ManifoldModel& m,
                                        const WorkingChart& chart,
                                        const Vec& x) {
  ChristoffelSymbols gamma(m.dim(), chart);
  switch (m.kind()) {
    case ManifoldKind::kEuclidean:
      break;
    case ManifoldKind::kHalfPlane2: {
      const double y = x[1];
      if (!(y > 0.0)) {
        throw Error(ErrorCode::kInvalidPoint, "half-plane chart needs y > 0");
      }
      gamma(0, 0, 1) = -1.0 / y;
      gamma(0, 1, 0) = -1.0 / y;
      gamma(1, 0, 0) = 1.0 / y;
      gamma(1, 1, 1) = -1.0 / y;
      break;
    }
    case ManifoldKind::kSphere2: {
      const double st = std::sin(x[0]), ct = std::cos(x[0]);
      gamma(0, 1, 1) = -st * ct;
      gamma(1, 0, 1) = ct / st;
      gamma(1, 1, 0) = ct / st;
      break;
    }
  }
  return gamma;
}

WorkingChart chart_at(const ManifoldModel& m, const Point& p) {
  if (m.kind() != ManifoldKind::kSphere2) return WorkingChart::identity(m);
  const Eigen::Vector3d x = as3(p.coords);
  Eigen::Vector3d e = Eigen::Vector3d::Zero();
  e[least_aligned_axis(x)] = 1.0;
  return WorkingChart::sphere(x.cross(e));
}

WorkingChart chart_avoiding(const ManifoldModel& m,
                            const std::vector<Point>& points,
                            double* clearance) {
  if (m.kind() != ManifoldKind::kSphere2 || points.empty()) {
    if (clearance) *clearance = std::numeric_limits<double>::infinity();
    return WorkingChart::identity(m);
  }
  std::vector<Eigen::Vector3d> axes = {Eigen::Vector3d::UnitX(),
                                       Eigen::Vector3d::UnitY(),
                                       Eigen::Vector3d::UnitZ()};
  // Normals of planes through sampled points catch great-circle arcs exactly.
  const Eigen::Vector3d first = as3(points.front().coords);
  for (const Point& q : {points[points.size() / 2], points.back()}) {
    const Eigen::Vector3d n = first.cross(as3(q.coords));
    if (n.norm() > 1e-8) axes.push_back(n.normalized());
  }
  // Fibonacci lattice on the upper hemisphere; axes are lines, so the lower
  // hemisphere adds nothing.
  constexpr int kLattice = 256;
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < kLattice; ++i) {
    const double z = 1.0 - (i + 0.5) / kLattice;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    axes.emplace_back(r * std::cos(golden * i), r * std::sin(golden * i), z);
  }
  double best = -1.0;
  WorkingChart best_chart = WorkingChart::identity(m);
  for (const Eigen::Vector3d& a : axes) {
    const WorkingChart chart = WorkingChart::sphere(a);
    double worst = std::numeric_limits<double>::infinity();
    for (const Point& q : points) {
      worst = std::min(worst, chart.polar_clearance(q));
      if (worst <= best) break;
    }
    if (worst > best) {
      best = worst;
      best_chart = chart;
    }
  }
  if (clearance) *clearance = best;
  return best_chart;
}

ChristoffelSymbols christoffel_at(const ManifoldModel& m, const Point& p) {
  check_point(m, p);
  const WorkingChart chart = chart_at(m, p);
  return christoffel_in_chart(m, chart, chart.to_chart(p));
}

double distance(const ManifoldModel& m, const Point& p, const Point& q) {
  check_point(m, p);
  check_point(m, q);
  switch (m.kind()) {
    case ManifoldKind::kEuclidean:
      return (p.coords - q.coords).norm();
    case ManifoldKind::kSphere2: {
      const Eigen::Vector3d a = as3(p.coords), b = as3(q.coords);
      return std::atan2(a.cross(b).norm(), a.dot(b));
    }
    case ManifoldKind::kHalfPlane2: {
      const double chord = (p.coords - q.coords).norm();
      return 2.0 * std::asinh(chord /
                              (2.0 * std::sqrt(p.coords[1] * q.coords[1])));
    }
  }
  return 0.0;
}

bool on_cut_locus(const ManifoldModel& m, const Point& p, const Point& q) {
  if (m.kind() != ManifoldKind::kSphere2) return false;
  return p.coords.dot(q.coords) <= -1.0 + kAntipodalSlack;
}

namespace internal {

void half_plane_geodesic_from_i(double a, double s, Complex* z, Complex* dz) {
  const double theta = 0.5 * (a - 0.5 * std::numbers::pi);
  const double c = std::cos(theta), sn = std::sin(theta);
  const Complex zeta = Complex(0.0, 1.0) * std::exp(s);
  const Complex den = -sn * zeta + c;
  *z = (c * zeta + sn) / den;
  *dz = zeta / (den * den);
}

}  // namespace internal

Point exp_map(const ManifoldModel& m, const TangentVector& v) {
  check_tangent(m, v);
  const Point& p = v.base;
  switch (m.kind()) {
    case ManifoldKind::kEuclidean:
      return {Vec(p.coords + v.components)};
    case ManifoldKind::kSphere2: {
      const double r = v.components.norm();
      if (r == 0.0) return p;
      Vec q = std::cos(r) * p.coords + std::sin(r) * (v.components / r);
      q /= q.norm();
      return {q};
    }
    case ManifoldKind::kHalfPlane2: {
      const double y = p.coords[1];
      const double speed = v.components.norm() / y;
      if (speed == 0.0) return p;
      const double a = std::atan2(v.components[1], v.components[0]);
      Complex w, dw;
      internal::half_plane_geodesic_from_i(a, speed, &w, &dw);
      return {from_complex(Complex(p.coords[0], 0.0) + y * w)};
    }
  }
  return p;
}

TangentVector log_map(const ManifoldModel& m, const Point& p, const Point& q) {
  check_point(m, p);
  check_point(m, q);
  if (p.coords == q.coords) return zero_vector(m, p);
  switch (m.kind()) {
    case ManifoldKind::kEuclidean:
      return {p, Vec(q.coords - p.coords)};
    case ManifoldKind::kSphere2: {
      if (on_cut_locus(m, p, q)) {
        throw Error(ErrorCode::kCutLocusAmbiguity,
                    "antipodal sphere points " + describe(p.coords) + " and " +
                        describe(q.coords) +
                        " have infinitely many minimising geodesics");
      }
      const Vec w = q.coords - p.coords.dot(q.coords) * p.coords;
      const double wn = w.norm();
      if (wn == 0.0) return zero_vector(m, p);
      return {p, Vec(distance(m, p, q) * w / wn)};
    }
    case ManifoldKind::kHalfPlane2: {
      const double y = p.coords[1];
      const Complex w = (to_complex(q.coords) - p.coords[0]) / y;
      const Complex zeta = (w - Complex(0.0, 1.0)) / (w + Complex(0.0, 1.0));
      const double a = std::arg(zeta) + 0.5 * std::numbers::pi;
      const double d = distance(m, p, q);
      Vec v(2);
      v << d * y * std::cos(a), d * y * std::sin(a);
      return {p, v};
    }
  }
  return zero_vector(m, p);
}

OrthonormalFrame orthonormal_frame(const ManifoldModel& m, const Point& p) {
  check_point(m, p);
  OrthonormalFrame frame{p, {}};
  switch (m.kind()) {
    case ManifoldKind::kEuclidean:
      for (int i = 0; i < m.dim(); ++i) {
        frame.vectors.push_back({p, Vec::Unit(m.dim(), i)});
      }
      break;
    case ManifoldKind::kHalfPlane2: {
      const double y = p.coords[1];
      frame.vectors.push_back({p, Vec(Vec::Unit(2, 0) * y)});
      frame.vectors.push_back({p, Vec(Vec::Unit(2, 1) * y)});
      break;
    }
    case ManifoldKind::kSphere2: {
      int drop = 0;
      for (int i = 1; i < 3; ++i) {
        if (std::abs(p.coords[i]) > std::abs(p.coords[drop])) drop = i;
      }
      for (int i = 0; i < 3; ++i) {
        if (i == drop) continue;
        Vec v = Vec::Unit(3, i) - p.coords[i] * p.coords;
        for (const TangentVector& u : frame.vectors) {
          v -= u.components.dot(v) * u.components;
        }
        v -= p.coords.dot(v) * p.coords;
        frame.vectors.push_back({p, Vec(v / v.norm())});
      }
      break;
    }
  }
  return frame;
}

double frame_defect(const ManifoldModel& m, const OrthonormalFrame& frame) {
  double worst = 0.0;
  for (size_t i = 0; i < frame.vectors.size(); ++i) {
    for (size_t j = 0; j < frame.vectors.size(); ++j) {
      const double g = inner(m, frame.base, frame.vectors[i].components,
                             frame.vectors[j].components);
      worst = std::max(worst, std::abs(g - (i == j ? 1.0 : 0.0)));
    }
  }
  return worst;
}

OrthonormalFrame rotate_frame(const OrthonormalFrame& frame, const Mat& R) {
  const auto n = static_cast<Eigen::Index>(frame.vectors.size());
  if (R.rows() != n || R.cols() != n) {
    throw Error(ErrorCode::kDimensionMismatch, "frame rotation has wrong size");
  }
  if ((R.transpose() * R - Mat::Identity(n, n)).cwiseAbs().maxCoeff() >
      1e-10) {
    throw Error(ErrorCode::kInvalidArgument, "frame rotation is not orthogonal");
  }
  OrthonormalFrame out{frame.base, {}};
  for (Eigen::Index j = 0; j < n; ++j) {
    out.vectors.push_back(frame_combination(frame, R.col(j)));
  }
  return out;
}

Vec frame_coefficients(const ManifoldModel& m, const OrthonormalFrame& frame,
                       const TangentVector& u) {
  Vec c(static_cast<Eigen::Index>(frame.vectors.size()));
  for (size_t i = 0; i < frame.vectors.size(); ++i) {
    c[static_cast<Eigen::Index>(i)] = inner(m, u, frame.vectors[i]);
  }
  return c;
}

TangentVector frame_combination(const OrthonormalFrame& frame, const Vec& c) {
  if (frame.vectors.empty() ||
      c.size() != static_cast<Eigen::Index>(frame.vectors.size())) {
    throw Error(ErrorCode::kDimensionMismatch,
                "coefficient count does not match frame size");
  }
  Vec v = Vec::Zero(frame.vectors.front().components.size());
  for (size_t i = 0; i < frame.vectors.size(); ++i) {
    v += c[static_cast<Eigen::Index>(i)] * frame.vectors[i].components;
  }
  return {frame.base, v};
}

}  // namespace rig
