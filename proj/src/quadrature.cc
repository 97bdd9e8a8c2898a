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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

namespace rig {

const char* quadrature_rule_name(QuadratureRule rule) {
  switch (rule) {
    case QuadratureRule::kGaussLegendre:
      return "gauss_legendre";
    case QuadratureRule::kTrapezoid:
      return "trapezoid";
  }
  return "unknown";
}

Quadrature Quadrature::fixed(int nodes, QuadratureRule rule) {
  Quadrature q;
  q.rule = rule;
  q.nodes = nodes;
  q.refine = false;
  q.max_nodes = std::max(nodes, q.max_nodes);
  return q;
}

void Quadrature::validate() const {
  if (nodes < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "quadrature needs at least 2 nodes, got " +
                    std::to_string(nodes));
  }
  if (!(tol > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "quadrature tol must be > 0");
  }
  if (refine && max_nodes < nodes) {
    throw Error(ErrorCode::kInvalidArgument, "max_nodes below initial nodes");
  }
}

QuadratureNodes quadrature_nodes(QuadratureRule rule, int n) {
  QuadratureNodes q;
  q.t.resize(n);
  q.w.resize(n);
  if (rule == QuadratureRule::kTrapezoid) {
    const double h = 1.0 / (n - 1);
    for (int i = 0; i < n; ++i) {
      q.t[i] = i * h;
      q.w[i] = (i == 0 || i == n - 1) ? 0.5 * h : h;
    }
    return q;
  }
  // Roots of P_n by Newton iteration from the Chebyshev-like initial guess;
  // symmetric pairs are filled together.
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // Map [-1, 1] to [0, 1]; index 0 is the node nearest t = 0.
    q.t[i] = 0.5 * (1.0 - x);
    q.t[n - 1 - i] = 0.5 * (1.0 + x);
    q.w[i] = 0.5 * w;
    q.w[n - 1 - i] = 0.5 * w;
  }
  return q;
}

QuadratureResult integrate(
    const Quadrature& q,
    const std::function<Mat(const QuadratureNodes&)>& integrate_nodes) {
  q.validate();
  QuadratureResult result;
  int n = q.nodes;
  result.value = integrate_nodes(quadrature_nodes(q.rule, n));
  result.nodes = n;
  if (!q.refine) return result;
  while (true) {
    const int next = q.rule == QuadratureRule::kTrapezoid ? 2 * n - 1 : 2 * n;
    if (next > q.max_nodes) {
      std::ostringstream msg;
      msg << "no convergence to relative tolerance " << q.tol << " within "
          << q.max_nodes << " nodes (last change " << result.delta << ")";
      throw Error(ErrorCode::kQuadratureNotConverged, msg.str());
    }
    Mat refined = integrate_nodes(quadrature_nodes(q.rule, next));
    const double delta =
        refined.size() ? (refined - result.value).cwiseAbs().maxCoeff() : 0.0;
    const double scale =
        std::max(1.0, refined.size() ? refined.cwiseAbs().maxCoeff() : 0.0);
    result.value = std::move(refined);
    result.nodes = next;
    result.delta = delta;
    if (delta < q.tol * scale) return result;
    n = next;
  }
}

double integrate_scalar(const Quadrature& q,
                        const std::function<double(double)>& f,
                        int* nodes_used) {
  const QuadratureResult r = integrate(q, [&](const QuadratureNodes& nodes) {
    double s = 0.0;
    for (size_t k = 0; k < nodes.t.size(); ++k) s += nodes.w[k] * f(nodes.t[k]);
    Mat out(1, 1);
    out(0, 0) = s;
    return out;
  });
  if (nodes_used) *nodes_used = r.nodes;
  return r.value(0, 0);
}

}  // namespace rig
