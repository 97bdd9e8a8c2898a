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

#ifndef RIG_MANIFOLD_H_
#define RIG_MANIFOLD_H_

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rig/errors.h"

namespace rig {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

enum class ManifoldKind { kEuclidean, kSphere2, kHalfPlane2 };

// Tolerances and step counts shared by the geodesic and transport solvers.
struct NumericParams {
  // Residual tolerance of the shooting solver (cross-check oracle only).
  double bvp_tol = 1e-10;
  // Initial RK4 step count for transport-ODE integration.
  int transport_steps = 256;
  // Doubling stops once successive results differ by less than this...
  double transport_tol = 1e-9;
  // ...or once this many steps have been used.
  int max_transport_steps = 4096;

  bool operator==(const NumericParams&) const = default;
};

// One of the built-in complete Riemannian manifolds. Cheap to copy.
class ManifoldModel {
 public:
  static ManifoldModel euclidean(int n, NumericParams params = {});
  static ManifoldModel sphere2(NumericParams params = {});
  static ManifoldModel half_plane2(NumericParams params = {});

  ManifoldKind kind() const { return kind_; }
  // Intrinsic dimension n.
  int dim() const { return dim_; }
  // Length of the coordinate vectors used for points and tangent vectors
  // (3 for the embedded sphere, dim() otherwise).
  int coord_dim() const { return kind_ == ManifoldKind::kSphere2 ? 3 : dim_; }
  const NumericParams& params() const { return params_; }
  ManifoldModel with_params(NumericParams params) const;

  // "euclidean(3)", "sphere2", "half_plane2".
  std::string name() const;

  bool operator==(const ManifoldModel&) const = default;

 private:
  ManifoldModel(ManifoldKind kind, int dim, NumericParams params);

  ManifoldKind kind_;
  int dim_;
  NumericParams params_;
};

// Euclidean: ambient coordinates. Sphere2: unit vector in R^3.
// HalfPlane2: (x, y) with y > 0.
struct Point {
  Vec coords;
};

// Sphere2 components are an ambient 3-vector orthogonal to the base point;
// the other manifolds use coordinate components.
struct TangentVector {
  Point base;
  Vec components;
};

struct OrthonormalFrame {
  Point base;
  std::vector<TangentVector> vectors;
};

// Throws InvalidPoint unless p is a valid point of m.
void check_point(const ManifoldModel& m, const Point& p);

// Validates coords as a point of m. For Sphere2, coords within
// `normalize_slack` of unit norm are renormalized; anything further off is
// rejected.
Point make_point(const ManifoldModel& m, const Vec& coords,
                 double normalize_slack = 0.0);

// Sphere2 tangent vectors are projected onto the tangent plane.
TangentVector make_tangent(const ManifoldModel& m, const Point& base,
                           const Vec& components);

void check_tangent(const ManifoldModel& m, const TangentVector& u);

// Riemannian metric as a coord_dim() square matrix. For Sphere2 this is the
// tangent-plane projector I - p p^T, which restricts to the round metric.
Mat metric_at(const ManifoldModel& m, const Point& p);

double inner(const ManifoldModel& m, const Point& p, const Vec& u,
             const Vec& v);
double inner(const ManifoldModel& m, const TangentVector& u,
             const TangentVector& v);
double norm(const ManifoldModel& m, const TangentVector& u);

TangentVector zero_vector(const ManifoldModel& m, const Point& p);

// Coordinate chart in which Christoffel-based ODEs are integrated. Identity
// for Euclidean and HalfPlane2. For Sphere2, a spherical chart
// (theta, phi) whose polar axis is `rotation.col(2)`:
//   x = rotation * (sin t cos f, sin t sin f, cos t).
struct WorkingChart {
  ManifoldKind kind = ManifoldKind::kEuclidean;
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();

  static WorkingChart identity(const ManifoldModel& m);
  // Sphere2 chart whose polar axis is `axis` (normalized internally).
  static WorkingChart sphere(const Eigen::Vector3d& axis);

  Vec to_chart(const Point& p) const;
  Point from_chart(const Vec& x) const;
  // Chart components of a tangent vector at p.
  Vec vector_to_chart(const Point& p, const Vec& components) const;
  // Tangent-vector components at p from chart components.
  Vec vector_from_chart(const Point& p, const Vec& chart_components) const;
  // Angular distance (radians) of p from the chart's polar axis line.
  double polar_clearance(const Point& p) const;
};

// Gamma^k_ij in a working chart, stored densely; symmetric in (i, j).
class ChristoffelSymbols {
 public:
  ChristoffelSymbols(int n, WorkingChart chart);

  int dim() const { return n_; }
  const WorkingChart& chart() const { return chart_; }
  double operator()(int k, int i, int j) const {
    return data_[(k * n_ + i) * n_ + j];
  }
  double& operator()(int k, int i, int j) {
    return data_[(k * n_ + i) * n_ + j];
  }
  // Gamma^k_ij a^i b^j.
  Vec contract(const Vec& a, const Vec& b) const;

 private:
  int n_;
  WorkingChart chart_;
  std::vector<double> data_;
};

// Chart maximising the smallest polar clearance over `points`, chosen from a
// fixed deterministic set of candidate axes. Identity chart off Sphere2.
// Writes the achieved clearance (radians) when `clearance` is non-null.
WorkingChart chart_avoiding(const ManifoldModel& m,
                            const std::vector<Point>& points,
                            double* clearance = nullptr);

// Christoffel symbols at p. On Sphere2 the chart is rotated so that p lies on
// its equator.
ChristoffelSymbols christoffel_at(const ManifoldModel& m, const Point& p);

// Christoffel symbols at chart coordinates x of the given chart.
ChristoffelSymbols christoffel_in_chart(const ManifoldModel& m,
                                        const WorkingChart& chart,
                                        const Vec& x);

// Chart selected for christoffel_at(m, p).
WorkingChart chart_at(const ManifoldModel& m, const Point& p);

double distance(const ManifoldModel& m, const Point& p, const Point& q);

Point exp_map(const ManifoldModel& m, const TangentVector& v);

// Throws CutLocusAmbiguity for antipodal Sphere2 pairs.
TangentVector log_map(const ManifoldModel& m, const Point& p, const Point& q);

// True when p and q have more than one minimising geodesic between them.
bool on_cut_locus(const ManifoldModel& m, const Point& p, const Point& q);

// Deterministic frame: the standard basis (Euclidean), (y d/dx, y d/dy)
// (HalfPlane2), or Gram-Schmidt of the ambient axes projected onto the
// tangent plane after dropping the axis most parallel to p (Sphere2).
OrthonormalFrame orthonormal_frame(const ManifoldModel& m, const Point& p);

// max |g(u_i, u_j) - delta_ij| over the frame.
double frame_defect(const ManifoldModel& m, const OrthonormalFrame& frame);

// Frame with vectors v_j = sum_i R_ij u_i; R must be orthogonal.
OrthonormalFrame rotate_frame(const OrthonormalFrame& frame, const Mat& R);

// Coefficients of u in an orthonormal frame, c_i = g(u, u_i).
Vec frame_coefficients(const ManifoldModel& m, const OrthonormalFrame& frame,
                       const TangentVector& u);

// Tangent vector sum_i c_i u_i.
TangentVector frame_combination(const OrthonormalFrame& frame, const Vec& c);

}  // namespace rig

#endif  // RIG_MANIFOLD_H_
