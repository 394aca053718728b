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

#ifndef GAZEREV_GLMM_INFERENCE_H_
#define GAZEREV_GLMM_INFERENCE_H_

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "gazerev/glmm/design.h"
#include "gazerev/glmm/glm.h"
#include "gazerev/glmm/glmm.h"

namespace gazerev::glmm {

struct WaldRow {
  std::string term;
  double estimate = 0.0;
  double se = 0.0;
  double z = 0.0;
  double p = 1.0;  // two-sided, standard normal reference
};

// z is always computed from unrounded internals. Throws kRank when the
// covariance is not positive definite.
std::vector<WaldRow> WaldTable(const std::vector<std::string>& columns,
                               const Eigen::VectorXd& beta,
                               const Eigen::MatrixXd& cov);
std::vector<WaldRow> WaldTable(const GlmFit& fit);
std::vector<WaldRow> WaldTable(const GlmmFit& fit);

enum class PredictionMode {
  kPopulation,   // random intercept set to 0
  kConditional,  // adds the fitted group mode; unknown groups get 0
};

// Probabilities for the rows of `rows`, whose columns must match the fit's
// (kSchema otherwise). Group membership is matched by name.
Eigen::VectorXd Predict(const GlmmFit& fit, const DesignMatrix& rows,
                        PredictionMode mode);

// -2 loglik + k log n.
double Bic(double loglik, int num_parameters, Eigen::Index n);
double Bic(const GlmmFit& fit);
double Bic(const GlmFit& fit);

}  // namespace gazerev::glmm

#endif  // GAZEREV_GLMM_INFERENCE_H_
