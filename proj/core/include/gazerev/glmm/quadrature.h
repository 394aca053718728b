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

#ifndef GAZEREV_GLMM_QUADRATURE_H_
#define GAZEREV_GLMM_QUADRATURE_H_

#include <vector>

namespace gazerev::glmm {

// Gauss-Hermite rule for integrals of the form  int exp(-x^2) f(x) dx.
// `log_weight_plus_x2[k]` = log(w_k) + x_k^2, the factor needed when the
// rule is applied to an arbitrary (re-centred) integrand.
struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::vector<double> log_weight_plus_x2;
};

// Golub-Welsch on the symmetric Jacobi matrix of the Hermite recurrence.
// Nodes ascending. Throws kDomain for n < 1.
GaussHermiteRule MakeGaussHermiteRule(int n);

}  // namespace gazerev::glmm

#endif  // GAZEREV_GLMM_QUADRATURE_H_
