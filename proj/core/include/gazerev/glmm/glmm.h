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

// Binomial GLMM with a single scalar random intercept per group:
//
//   logit P(y_i = 1 | u_g) = x_i' beta + u_g,   u_g = theta * v_g,  v_g ~ N(0, 1)
//
// The marginal likelihood integrates each group's v_g out with adaptive
// Gauss-Hermite quadrature centred at the group's conditional mode and
// scaled by the curvature there. Fitting maximizes it over (beta, log theta)
// with BFGS; a near-zero theta falls back to the fixed-effects GLM.

#ifndef GAZEREV_GLMM_GLMM_H_
#define GAZEREV_GLMM_GLMM_H_

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "gazerev/glmm/design.h"
#include "gazerev/glmm/glm.h"
#include "gazerev/glmm/quadrature.h"

namespace gazerev::glmm {

struct FitOptions {
  int quadrature_nodes = 20;
  // theta-hat below this refits as a GLM (random intercept dropped).
  double theta_degeneracy = 1e-3;
  double gradient_tolerance = 1e-6;
  int max_evaluations = 500;
  double initial_theta = 1.0;
  // Pins theta (no fallback); used for boundary checks.
  std::optional<double> fixed_theta;
  GlmOptions glm;
};

struct GlmmFit {
  std::vector<std::string> columns;
  Eigen::VectorXd beta;
  double theta = 0.0;  // random-intercept sd, logit scale
  Eigen::MatrixXd cov_beta;
  double loglik = 0.0;  // maximized marginal log-likelihood
  std::vector<std::string> group_names;
  std::vector<double> group_modes;  // conditional mode of u_g, logit scale
  bool converged = false;
  bool fallback_glm = false;
  bool theta_estimated = true;  // false after fallback or with fixed_theta
  int iterations = 0;
  int evaluations = 0;
  double gradient_norm = 0.0;
  Eigen::Index n = 0;
  Standardization position_scaling;
  std::vector<std::string> warnings;

  // Number of estimated parameters (betas plus theta when estimated).
  int num_parameters() const {
    return static_cast<int>(beta.size()) + (theta_estimated ? 1 : 0);
  }
};

// Marginal log-likelihood of a design. Groups are summed in ascending
// group index, so repeated evaluations are bitwise identical.
class MarginalLogLik {
 public:
  MarginalLogLik(const DesignMatrix& design, int quadrature_nodes = 20);

  struct Value {
    double loglik = 0.0;
    Eigen::VectorXd grad_beta;
    double grad_theta = 0.0;
    std::vector<double> modes;  // standardized mode v_g per group
  };

  double operator()(const Eigen::VectorXd& beta, double theta) const;
  // Gradient of the marginal likelihood computed as posterior expectations
  // of the complete-data score under the same quadrature rule.
  Value Evaluate(const Eigen::VectorXd& beta, double theta,
                 bool with_gradient) const;

  const DesignMatrix& design() const { return design_; }

 private:
  DesignMatrix design_;
  GaussHermiteRule rule_;
  std::vector<std::vector<Eigen::Index>> group_rows_;
};

// Throws kDegenerate (constant response), kSeparation / kRank from the GLM
// start, kConvergence when the budget is exhausted.
GlmmFit FitGlmmBinomial(const DesignMatrix& design, const FitOptions& options = {});

// GLM result expressed as a GlmmFit with theta = 0 and zero group modes.
GlmmFit AsGlmmFit(const GlmFit& glm, const DesignMatrix& design);

}  // namespace gazerev::glmm

#endif  // GAZEREV_GLMM_GLMM_H_
