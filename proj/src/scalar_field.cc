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

#include "rig/scalar_field.h"

#include <cmath>
#include <sstream>
#include <variant>

namespace rig {
namespace {

struct Constant {
  double c;
};
struct Affine {
  Vec w;
  double b;
};
struct LogY {};
struct Bump {
  Point center;
  double sigma;
};
struct Mlp {
  MlpWeights weights;
};
struct Combination {
  double a;
  ScalarField f;
  double b;
  ScalarField g;
};
struct Composition {
  ScalarField f;
  Isometry s;
};

// Euclidean partial derivatives in coordinates -> Riemannian gradient.
Vec raise_index(const ManifoldModel& m, const Point& p, const Vec& partials) {
  switch (m.kind()) {
    case ManifoldKind::kEuclidean:
      return partials;
    case ManifoldKind::kSphere2:
      return partials - partials.dot(p.coords) * p.coords;
    case ManifoldKind::kHalfPlane2: {
      const double y = p.coords[1];
      return partials * (y * y);
    }
  }
  return partials;
}

}  // namespace

struct ScalarField::Node {
  ManifoldModel m;
  std::variant<Constant, Affine, LogY, Bump, Mlp, Combination, Composition>
      kind;
};

ScalarField::ScalarField(std::shared_ptr<const Node> node)
    : node_(std::move(node)) {}

ScalarField ScalarField::constant(const ManifoldModel& m, double c) {
  return ScalarField(std::make_shared<Node>(Node{m, Constant{c}}));
}

ScalarField ScalarField::coordinate(const ManifoldModel& m, int index) {
  if (index < 0 || index >= m.coord_dim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "coordinate index " + std::to_string(index) +
                    " out of range for " + m.name());
  }
  return affine(m, Vec::Unit(m.coord_dim(), index), 0.0);
}

ScalarField ScalarField::affine(const ManifoldModel& m, const Vec& w,
                                double b) {
  if (w.size() != m.coord_dim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "affine weights need " + std::to_string(m.coord_dim()) +
                    " entries, got " + std::to_string(w.size()));
  }
  return ScalarField(std::make_shared<Node>(Node{m, Affine{w, b}}));
}

ScalarField ScalarField::sphere_height() {
  return coordinate(ManifoldModel::sphere2(), 2);
}

ScalarField ScalarField::log_y() {
  return ScalarField(
      std::make_shared<Node>(Node{ManifoldModel::half_plane2(), LogY{}}));
}

ScalarField ScalarField::gaussian_bump(const ManifoldModel& m,
                                       const Point& center, double sigma) {
  check_point(m, center);
  if (!(sigma > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "bump width must be > 0");
  }
  return ScalarField(std::make_shared<Node>(Node{m, Bump{center, sigma}}));
}

ScalarField ScalarField::mlp(const ManifoldModel& m, MlpWeights w) {
  validate_mlp(w);
  if (w.input_dim != m.coord_dim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "MLP input_dim " + std::to_string(w.input_dim) +
                    " does not match " + m.name() + " coordinate dimension " +
                    std::to_string(m.coord_dim()));
  }
  return ScalarField(std::make_shared<Node>(Node{m, Mlp{std::move(w)}}));
}

ScalarField ScalarField::linear_combination(double a, const ScalarField& f,
                                            double b, const ScalarField& g) {
  if (!(f.manifold() == g.manifold())) {
    throw Error(ErrorCode::kDimensionMismatch,
                "cannot combine fields on " + f.manifold().name() + " and " +
                    g.manifold().name());
  }
  return ScalarField(
      std::make_shared<Node>(Node{f.manifold(), Combination{a, f, b, g}}));
}

ScalarField ScalarField::compose(const ScalarField& f, const Isometry& s) {
  check_isometry(f.manifold(), s);
  return ScalarField(
      std::make_shared<Node>(Node{f.manifold(), Composition{f, s}}));
}

const ManifoldModel& ScalarField::manifold() const { return node_->m; }

const MlpWeights* ScalarField::mlp_weights() const {
  if (const auto* mlp = std::get_if<Mlp>(&node_->kind)) return &mlp->weights;
  return nullptr;
}

namespace {

void check_input(const ManifoldModel& m, const Point& p) {
  if (p.coords.size() != m.coord_dim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "field on " + m.name() + " evaluated at a point with " +
                    std::to_string(p.coords.size()) + " coordinates");
  }
  check_point(m, p);
}

}  // namespace

double ScalarField::value(const Point& p) const {
  const ManifoldModel& m = node_->m;
  check_input(m, p);
  return std::visit(
      [&](const auto& k) -> double {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Constant>) {
          return k.c;
        } else if constexpr (std::is_same_v<K, Affine>) {
          return k.w.dot(p.coords) + k.b;
        } else if constexpr (std::is_same_v<K, LogY>) {
          return std::log(p.coords[1]);
        } else if constexpr (std::is_same_v<K, Bump>) {
          const double d = distance(m, p, k.center);
          return std::exp(-d * d / (k.sigma * k.sigma));
        } else if constexpr (std::is_same_v<K, Mlp>) {
          return mlp_value(k.weights, p.coords);
        } else if constexpr (std::is_same_v<K, Combination>) {
          return k.a * k.f.value(p) + k.b * k.g.value(p);
        } else {
          return k.f.value(apply_isometry(m, k.s, p));
        }
      },
      node_->kind);
}

TangentVector ScalarField::gradient(const Point& p) const {
  const ManifoldModel& m = node_->m;
  check_input(m, p);
  return std::visit(
      [&](const auto& k) -> TangentVector {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Constant>) {
          return zero_vector(m, p);
        } else if constexpr (std::is_same_v<K, Affine>) {
          return {p, raise_index(m, p, k.w)};
        } else if constexpr (std::is_same_v<K, LogY>) {
          return {p, raise_index(m, p, Vec::Unit(2, 1) / p.coords[1])};
        } else if constexpr (std::is_same_v<K, Bump>) {
          // grad exp(-d^2/s^2) = exp(-d^2/s^2) * 2 log_p(c) / s^2.
          if (p.coords == k.center.coords) return zero_vector(m, p);
          const TangentVector toward = log_map(m, p, k.center);
          const double d = norm(m, toward);
          const double scale =
              2.0 * std::exp(-d * d / (k.sigma * k.sigma)) / (k.sigma * k.sigma);
          return {p, Vec(scale * toward.components)};
        } else if constexpr (std::is_same_v<K, Mlp>) {
          return {p, raise_index(m, p,
                                 mlp_value_and_gradient(k.weights, p.coords)
                                     .gradient)};
        } else if constexpr (std::is_same_v<K, Combination>) {
          return {p, Vec(k.a * k.f.gradient(p).components +
                         k.b * k.g.gradient(p).components)};
        } else {
          // grad (F o s)(p) = d(s^-1) grad F(s(p)).
          const TangentVector at_image = k.f.gradient(apply_isometry(m, k.s, p));
          TangentVector back =
              differential_of_isometry(m, k.s.inverse(), at_image);
          back.base = p;
          return back;
        }
      },
      node_->kind);
}

double ScalarField::differential(const TangentVector& u) const {
  return inner(node_->m, gradient(u.base), u);
}

std::string ScalarField::description() const {
  const ManifoldModel& m = node_->m;
  return std::visit(
      [&](const auto& k) -> std::string {
        using K = std::decay_t<decltype(k)>;
        std::ostringstream os;
        os.precision(17);
        if constexpr (std::is_same_v<K, Constant>) {
          os << "constant(" << k.c << ")";
        } else if constexpr (std::is_same_v<K, Affine>) {
          os << "affine(w=[";
          for (Eigen::Index i = 0; i < k.w.size(); ++i) {
            os << (i ? "," : "") << k.w[i];
          }
          os << "], b=" << k.b << ")";
        } else if constexpr (std::is_same_v<K, LogY>) {
          os << "log_y";
        } else if constexpr (std::is_same_v<K, Bump>) {
          os << "gaussian(sigma=" << k.sigma << ")";
        } else if constexpr (std::is_same_v<K, Mlp>) {
          os << "mlp[" << k.weights.input_dim;
          for (const MlpLayer& l : k.weights.layers) {
            os << "-" << l.weights.rows();
          }
          os << "]";
        } else if constexpr (std::is_same_v<K, Combination>) {
          os << k.a << "*" << k.f.description() << " + " << k.b << "*"
             << k.g.description();
        } else {
          os << k.f.description() << " o isometry";
        }
        os << " on " << m.name();
        return os.str();
      },
      node_->kind);
}

double eval(const ScalarField& f, const Point& p) { return f.value(p); }

TangentVector gradient(const ScalarField& f, const Point& p) {
  return f.gradient(p);
}

ScalarField linear_combination(double a, const ScalarField& f, double b,
                               const ScalarField& g) {
  return ScalarField::linear_combination(a, f, b, g);
}

ScalarField mlp_from_document(const ManifoldModel& m,
                              const std::string& document) {
  return ScalarField::mlp(m, mlp_from_json(document));
}

double ray_derivative(const ScalarField& f, const TangentVector& u, double h) {
  const ManifoldModel& m = f.manifold();
  const TangentVector forward{u.base, Vec(h * u.components)};
  const TangentVector backward{u.base, Vec(-h * u.components)};
  return (f.value(exp_map(m, forward)) - f.value(exp_map(m, backward))) /
         (2.0 * h);
}

}  // namespace rig
