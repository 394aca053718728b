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

#include "gazerev/glmm/glm.h"

#include <cmath>

#include "gazerev/error.h"
#include "gazerev/glmm/distributions.h"

namespace gazerev::glmm {
namespace {

// Solves the weighted least-squares step; rank-checked through a pivoted QR
// of sqrt(W) X so collinear designs are reported rather than regularized.
Eigen::VectorXd WeightedSolve(const Eigen::MatrixXd& x, const Eigen::VectorXd& w,
                              const Eigen::VectorXd& z) {
  const Eigen::VectorXd sw = w.array().sqrt();
  const Eigen::MatrixXd wx = sw.asDiagonal() * x;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(wx);
  qr.setThreshold(1e-10);
  if (qr.rank() < x.cols()) {
    throw Error(ErrorKind::kRank,
                "weighted normal equations are singular (rank " +
                    std::to_string(qr.rank()) + " of " +
                    std::to_string(x.cols()) + ")");
  }
  return qr.solve(Eigen::VectorXd(sw.cwiseProduct(z)));
}

}  // namespace

double BernoulliLogLik(const Eigen::VectorXd& y, const Eigen::VectorXd& eta) {
  double ll = 0.0;
  for (Eigen::Index i = 0; i < y.size(); ++i) ll += y[i] * eta[i] - Log1pExp(eta[i]);
  return ll;
}

GlmFit FitGlmBinomial(const DesignMatrix& design, const GlmOptions& options) {
  design.Validate();
  const Eigen::MatrixXd& x = design.x;
  const Eigen::VectorXd& y = design.y;
  const Eigen::Index n = x.rows();
  const Eigen::Index p = x.cols();

  // Classic start: mu = (y + 1/2) / 2.
  Eigen::VectorXd mu = (y.array() + 0.5) / 2.0;
  Eigen::VectorXd eta = (mu.array() / (1.0 - mu.array())).log();
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
  double deviance = -2.0 * BernoulliLogLik(y, eta);
  bool first = true;

  GlmFit fit;
  fit.columns = design.columns;
  fit.n = n;
  fit.position_scaling = design.position_scaling;

  for (int iter = 1; iter <= options.max_iterations; ++iter) {
    Eigen::VectorXd w = mu.array() * (1.0 - mu.array());
    w = w.cwiseMax(1e-12);
    const Eigen::VectorXd z = eta.array() + (y - mu).array() / w.array();
    Eigen::VectorXd candidate = WeightedSolve(x, w, z);
    Eigen::VectorXd candidate_eta = x * candidate;
    double candidate_dev = -2.0 * BernoulliLogLik(y, candidate_eta);

    if (!first) {
      int halvings = 0;
      while (!(candidate_dev <= deviance + 1e-10 * (1.0 + deviance))) {
        if (++halvings > 30) {
          throw Error(ErrorKind::kSeparation,
                      "IRLS deviance stopped decreasing (separation suspected)");
        }
        candidate = 0.5 * (candidate + beta);
        candidate_eta = x * candidate;
        candidate_dev = -2.0 * BernoulliLogLik(y, candidate_eta);
      }
    }
    const double change = std::abs(candidate_dev - deviance);
    beta = candidate;
    eta = candidate_eta;
    deviance = candidate_dev;
    for (Eigen::Index i = 0; i < n; ++i) mu[i] = InverseLogit(eta[i]);
    fit.iterations = iter;

    if (beta.cwiseAbs().maxCoeff() > options.separation_bound) {
      throw Error(ErrorKind::kSeparation,
                  "coefficient magnitude exceeded " +
                      std::to_string(options.separation_bound) +
                      " (separation suspected)");
    }
    if (!first && change < options.deviance_tolerance) {
      fit.converged = true;
      break;
    }
    first = false;
  }
  if (!fit.converged) {
    throw Error(ErrorKind::kConvergence,
                "IRLS did not converge in " +
                    std::to_string(options.max_iterations) + " iterations");
  }

  // Under (quasi-)complete separation the deviance creeps towards zero in
  // ever smaller steps, so IRLS can "converge" before any coefficient
  // reaches separation_bound. Fitted probabilities pinned at 0 or 1 give
  // it away.
  const double pinned = 1e-9;
  if ((mu.array() < pinned).any() || (mu.array() > 1.0 - pinned).any()) {
    throw Error(ErrorKind::kSeparation,
                "fitted probabilities numerically 0 or 1 (separation suspected)");
  }

  const Eigen::VectorXd w = (mu.array() * (1.0 - mu.array())).matrix();
  const Eigen::MatrixXd info = x.transpose() * w.asDiagonal() * x;
  Eigen::LLT<Eigen::MatrixXd> llt(info);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorKind::kRank, "Fisher information is not positive definite");
  }
  fit.beta = beta;
  fit.cov = llt.solve(Eigen::MatrixXd::Identity(p, p));
  fit.cov = 0.5 * (fit.cov + fit.cov.transpose());
  fit.loglik = BernoulliLogLik(y, eta);
  fit.deviance = -2.0 * fit.loglik;
  return fit;
}

}  // namespace gazerev::glmm
