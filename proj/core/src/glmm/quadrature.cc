// Copyright 2026 The gazerev Authors.
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

#include "gazerev/glmm/quadrature.h"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "gazerev/error.h"

namespace gazerev::glmm {

GaussHermiteRule MakeGaussHermiteRule(int n) {
  if (n < 1) {
    throw Error(ErrorKind::kDomain,
                "quadrature needs at least one node, got " + std::to_string(n));
  }
  // Physicists' Hermite: off-diagonal sqrt(k / 2), zero diagonal.
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    jacobi(k, k - 1) = jacobi(k - 1, k) = std::sqrt(0.5 * k);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
  GaussHermiteRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  rule.log_weight_plus_x2.resize(n);
  for (int k = 0; k < n; ++k) {
    // Polish the eigenvalue with Newton steps on the orthonormal p_n, then
    // take the Christoffel weight 1 / sum_j p_j(x)^2, which stays accurate
    // for the tiny outer weights where eigenvector entries do not.
    double x = solver.eigenvalues()[k];
    std::vector<double> p(n + 1);
    auto evaluate = [&](double at) {
      p[0] = std::pow(std::numbers::pi, -0.25);
      if (n >= 1) p[1] = std::sqrt(2.0) * at * p[0];
      for (int j = 1; j < n; ++j) {
        p[j + 1] = std::sqrt(2.0 / (j + 1)) * at * p[j] -
                   std::sqrt(static_cast<double>(j) / (j + 1)) * p[j - 1];
      }
    };
    for (int it = 0; it < 3; ++it) {
      evaluate(x);
      const double derivative = std::sqrt(2.0 * n) * p[n - 1];
      if (derivative == 0.0) break;
      x -= p[n] / derivative;
    }
    evaluate(x);
    double christoffel = 0.0;
    for (int j = 0; j < n; ++j) christoffel += p[j] * p[j];
    rule.nodes[k] = std::abs(x) < 1e-15 ? 0.0 : x;
    rule.weights[k] = 1.0 / christoffel;
    rule.log_weight_plus_x2[k] = -std::log(christoffel) + x * x;
  }
  return rule;
}

}  // namespace gazerev::glmm
