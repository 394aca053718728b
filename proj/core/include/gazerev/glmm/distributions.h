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

#ifndef GAZEREV_GLMM_DISTRIBUTIONS_H_
#define GAZEREV_GLMM_DISTRIBUTIONS_H_

namespace gazerev::glmm {

// P(X > x) for X ~ chi-squared(df). Throws kDomain for df < 1 or x < 0.
double Chi2Survival(double x, double df);

// P(Z > z) for Z ~ N(0, 1).
double NormalSurvival(double z);

// Numerically stable helpers for the logit link.
double InverseLogit(double eta);
// log(1 + exp(x)) without overflow.
double Log1pExp(double x);

}  // namespace gazerev::glmm

#endif  // GAZEREV_GLMM_DISTRIBUTIONS_H_
