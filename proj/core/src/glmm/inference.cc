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

#include "gazerev/glmm/inference.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "gazerev/error.h"
#include "gazerev/glmm/distributions.h"

namespace gazerev::glmm {

std::vector<WaldRow> WaldTable(const std::vector<std::string>& columns,
                               const Eigen::VectorXd& beta,
                               const Eigen::MatrixXd& cov) {
  const Eigen::Index p = beta.size();
  if (cov.rows() != p || cov.cols() != p ||
      static_cast<Eigen::Index>(columns.size()) != p) {
    throw Error(ErrorKind::kSchema, "coefficient and covariance sizes differ");
  }
  Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (!cov.allFinite() || llt.info() != Eigen::Success) {
    throw Error(ErrorKind::kRank,
                "coefficient covariance is not positive definite");
  }
  std::vector<WaldRow> rows;
  rows.reserve(columns.size());
  for (Eigen::Index j = 0; j < p; ++j) {
    WaldRow row;
    row.term = columns[j];
    row.estimate = beta[j];
    row.se = std::sqrt(cov(j, j));
    row.z = row.estimate / row.se;
    row.p = std::min(1.0, 2.0 * NormalSurvival(std::abs(row.z)));
    rows.push_back(row);
  }
  return rows;
}

std::vector<WaldRow> WaldTable(const GlmFit& fit) {
  return WaldTable(fit.columns, fit.beta, fit.cov);
}

std::vector<WaldRow> WaldTable(const GlmmFit& fit) {
  return WaldTable(fit.columns, fit.beta, fit.cov_beta);
}

Eigen::VectorXd Predict(const GlmmFit& fit, const DesignMatrix& rows,
                        PredictionMode mode) {
  if (rows.columns != fit.columns) {
    std::string have, want;
    for (const auto& c : rows.columns) have += (have.empty() ? "" : ",") + c;
    for (const auto& c : fit.columns) want += (want.empty() ? "" : ",") + c;
    throw Error(ErrorKind::kSchema, "prediction columns [" + have +
                                        "] do not match the fit [" + want + "]");
  }
  Eigen::VectorXd eta = rows.x * fit.beta;
  if (mode == PredictionMode::kConditional) {
    std::map<std::string_view, double> modes;
    for (std::size_t g = 0; g < fit.group_names.size(); ++g) {
      modes[fit.group_names[g]] = fit.group_modes[g];
    }
    for (Eigen::Index i = 0; i < eta.size(); ++i) {
      auto it = modes.find(rows.group_names[rows.group[i]]);
      if (it != modes.end()) eta[i] += it->second;
    }
  }
  for (Eigen::Index i = 0; i < eta.size(); ++i) eta[i] = InverseLogit(eta[i]);
  return eta;
}

double Bic(double loglik, int num_parameters, Eigen::Index n) {
  return -2.0 * loglik + num_parameters * std::log(static_cast<double>(n));
}

double Bic(const GlmmFit& fit) {
  return Bic(fit.loglik, fit.num_parameters(), fit.n);
}

double Bic(const GlmFit& fit) {
  return Bic(fit.loglik, static_cast<int>(fit.beta.size()), fit.n);
}

}  // namespace gazerev::glmm
