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

#ifndef GAZEREV_GLMM_GLM_H_
#define GAZEREV_GLMM_GLM_H_

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "gazerev/glmm/design.h"

namespace gazerev::glmm {

// Fixed-effects binomial (logit) fit.
struct GlmFit {
  std::vector<std::string> columns;
  Eigen::VectorXd beta;
  Eigen::MatrixXd cov;  // inverse Fisher information at beta
  double loglik = 0.0;
  double deviance = 0.0;
  bool converged = false;
  int iterations = 0;
  Eigen::Index n = 0;
  Standardization position_scaling;
};

struct GlmOptions {
  double deviance_tolerance = 1e-8;
  int max_iterations = 50;
  double separation_bound = 30.0;  // |beta_j| beyond this signals separation
};

// Sum_i y_i * eta_i - log(1 + exp(eta_i)).
double BernoulliLogLik(const Eigen::VectorXd& y, const Eigen::VectorXd& eta);

// IRLS with step halving. Throws kSeparation when a coefficient exceeds
// the bound or the deviance cannot be decreased, kRank when the weighted
// normal equations are singular, kConvergence when the budget runs out.
GlmFit FitGlmBinomial(const DesignMatrix& design, const GlmOptions& options = {});

}  // namespace gazerev::glmm

#endif  // GAZEREV_GLMM_GLM_H_
