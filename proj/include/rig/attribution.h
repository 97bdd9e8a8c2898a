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

#ifndef RIG_ATTRIBUTION_H_
#define RIG_ATTRIBUTION_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rig/curve.h"
#include "rig/manifold.h"
#include "rig/quadrature.h"
#include "rig/scalar_field.h"
#include "rig/transport.h"

namespace rig {

// Orientation convention: curves run from the explained point p (t = 0) to
// the base-point o (t = 1), and the attribution integrals carry a leading
// minus sign. With this convention attributions sum to F(p) - F(o), the same
// totals as integrated gradients taken from the baseline to the input.

struct CurveInfo {
  Point start;
  Point end;
  double length = 0.0;
  int quadrature_nodes = 0;
  double quadrature_delta = 0.0;
  // Max geodesic-equation residual over a few interior samples.
  double geodesic_residual = 0.0;
  TransportMode transport = TransportMode::kIdentity;
  // Max deviation from orthonormality of the transported frames.
  double frame_defect = 0.0;
};

// Path attribution form in an orthonormal frame at p:
//   entries(i, j) = -int_0^1 dF(P_t u_i) g(P_t u_j, c'(t)) dt.
struct AttributionMatrix {
  ManifoldModel manifold = ManifoldModel::euclidean(1);
  Point base;
  OrthonormalFrame frame;
  Mat entries;
  CurveInfo curve_info;
  double value_p = 0.0;  // F(p)
  double value_o = 0.0;  // F(o)
};

// Eigen-decomposition of the symmetrised form. Eigenvalues are sorted by
// |lambda| ascending; eigenvector i has coefficients `coefficients.col(i)`
// in the input frame and is also given as `frame.vectors[i]`.
struct EigenAttribution {
  Vec eigenvalues;
  Mat coefficients;
  OrthonormalFrame frame;
  // max_i ||Q v_i - lambda_i v_i||.
  double residual = 0.0;
};

enum class AttributionMethod { kIG, kRIG, kGenericBAM, kEigenRIG };

const char* method_name(AttributionMethod method);
AttributionMethod parse_method(const std::string& name);

struct Diagnostics {
  int quadrature_nodes = 0;
  double geodesic_residual = 0.0;
  std::string transport_mode;
  double geodesic_length = 0.0;
  double frame_defect = 0.0;
  double eigen_residual = 0.0;

  bool operator==(const Diagnostics&) const = default;
};

struct AttributionReport {
  AttributionMethod method = AttributionMethod::kRIG;
  ManifoldModel manifold = ManifoldModel::euclidean(1);
  Point p;
  Point o;
  OrthonormalFrame frame;
  Vec attributions;
  std::optional<Vec> eigenvalues;
  // Full path attribution form when it was computed.
  std::optional<Mat> alpha;
  double value_p = 0.0;
  double value_o = 0.0;
  // |sum_i A_i - (F(p) - F(o))|.
  double completeness_residual = 0.0;
  // epsilon(F) = -F(o) in sum_i A_i = F(p) + epsilon(F).
  double error_term = 0.0;
  Diagnostics diagnostics;
};

// Integrated gradients on Euclidean space along x' + t (x - x'):
//   IG_u = <x - x', u> int_0^1 <grad F(x' + t (x - x')), u> dt.
// Throws WrongManifold elsewhere.
AttributionReport ig(const ScalarField& f, const Point& x,
                     const Point& baseline, const OrthonormalFrame& basis,
                     const Quadrature& q = {});

// -int_0^1 dF(P_t u) g(P_t u, c'(t)) dt along any curve, with u transported
// in closed form on geodesics and by the transport ODE otherwise.
double bam_along_curve(const ScalarField& f, const Curve& c,
                       const TangentVector& u, const Quadrature& q = {},
                       const TransportOptions& transport = {});

// Path attribution form along an arbitrary curve starting at frame.base.
AttributionMatrix alpha_matrix_along(const ScalarField& f, const Curve& c,
                                     const OrthonormalFrame& frame,
                                     const Quadrature& q = {},
                                     const TransportOptions& transport = {});

// Path attribution form along the minimising geodesic from p to o.
AttributionMatrix alpha_matrix(const ScalarField& f, const Point& p,
                               const Point& o, const OrthonormalFrame& frame,
                               const Quadrature& q = {});

// Diagonal of alpha_matrix: the Riemannian integrated gradients.
AttributionReport rig(const ScalarField& f, const Point& p, const Point& o,
                      const OrthonormalFrame& frame, const Quadrature& q = {});

// Report built from a computed matrix (diagonal attributions).
AttributionReport report_from_matrix(const AttributionMatrix& a,
                                     AttributionMethod method);

// (A + A^T) / 2; the diagonal is unchanged bit for bit.
AttributionMatrix symmetrize(const AttributionMatrix& a);

// Symmetric eigen-decomposition of the symmetrised form. In an orthonormal
// frame the metric is the identity, so the symmetrised entries are the
// matrix of the associated endomorphism. Eigenvector signs are fixed so the
// first component above 1e-12 in magnitude is positive.
EigenAttribution eigen_attributions(const AttributionMatrix& a);

// RIG evaluated in the eigenframe: attributions are the re-evaluated
// diagonal, `eigenvalues` holds the spectrum.
AttributionReport eigen_rig(const ScalarField& f, const Point& p,
                            const Point& o, const Quadrature& q = {});

// Expresses the form in the rotated frame v_j = sum_i R_ij u_i: R^T A R.
AttributionMatrix change_frame(const AttributionMatrix& a, const Mat& R);

struct BoundCheck {
  int samples = 0;
  double lambda_max = 0.0;       // |lambda_n|
  double max_abs_attribution = 0.0;
  double max_ratio = 0.0;        // max |alpha(u, u)| / |lambda_n|
  int violations = 0;            // |alpha(u, u)| > |lambda_n| + slack
  double top_eigenvector_ratio = 0.0;
};

// Samples unit directions u and compares |alpha(u, u)| against the largest
// |eigenvalue| of the symmetrised form.
BoundCheck attribution_bound_check(const AttributionMatrix& a, int samples,
                                   std::uint64_t seed, double slack = 1e-10);

struct AttributionJob {
  ScalarField field;
  Point p;
  Point o;
  OrthonormalFrame frame;
  Quadrature quadrature;
};

// Independent rig() evaluations on up to `threads` worker threads; results
// come back in job order and do not depend on scheduling. A job that throws
// rethrows from here after all workers finish.
std::vector<AttributionReport> rig_batch(const std::vector<AttributionJob>& jobs,
                                         int threads);

}  // namespace rig

#endif  // RIG_ATTRIBUTION_H_
