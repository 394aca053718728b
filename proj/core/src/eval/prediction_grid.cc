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

#include "gazerev/eval/prediction_grid.h"

#include <algorithm>
#include <cmath>

#include "gazerev/error.h"
#include "gazerev/glmm/design.h"
#include "gazerev/glmm/distributions.h"

namespace gazerev::eval {

namespace {
constexpr double kZ95 = 1.959963984540054;
}  // namespace

std::vector<GridPoint> PredictionGrid(const glmm::GlmmFit& fit,
                                      const AnalysisFrame& frame,
                                      const std::string& predictor, int n_points) {
  if (predictor != glmm::kPReg && predictor != glmm::kPSkip) {
    throw Error(ErrorKind::kUsage, "grid predictor must be p_reg or p_skip, got '" +
                                       predictor + "'");
  }
  if (n_points < 2) throw Error(ErrorKind::kDomain, "grid needs at least 2 points");
  if (frame.rows.empty()) throw Error(ErrorKind::kEmptyInput, "empty analysis frame");
  const auto varied = std::find(fit.columns.begin(), fit.columns.end(), predictor);
  if (varied == fit.columns.end()) {
    throw Error(ErrorKind::kSchema, "fit has no '" + predictor + "' term");
  }

  double mean_pos = 0.0, mean_reg = 0.0, mean_skip = 0.0, max_x = 0.0;
  for (const FrameRow& row : frame.rows) {
    mean_pos += row.position_raw;
    mean_reg += row.p_reg;
    mean_skip += row.p_skip;
    max_x = std::max(max_x, predictor == glmm::kPReg ? row.p_reg : row.p_skip);
  }
  const double n = static_cast<double>(frame.rows.size());
  mean_pos /= n;
  mean_reg /= n;
  mean_skip /= n;

  const Eigen::Index p = fit.beta.size();
  Eigen::VectorXd base(p);
  for (Eigen::Index j = 0; j < p; ++j) {
    const std::string& c = fit.columns[j];
    if (c == glmm::kIntercept) {
      base[j] = 1.0;
    } else if (c == glmm::kPosition) {
      base[j] = fit.position_scaling.Apply(mean_pos);
    } else if (c == glmm::kPReg) {
      base[j] = mean_reg;
    } else if (c == glmm::kPSkip) {
      base[j] = mean_skip;
    } else {
      throw Error(ErrorKind::kSchema, "unknown fit column '" + c + "'");
    }
  }
  const Eigen::Index vj = varied - fit.columns.begin();
  std::vector<GridPoint> grid;
  grid.reserve(n_points);
  for (int i = 0; i < n_points; ++i) {
    Eigen::VectorXd x = base;
    x[vj] = max_x * static_cast<double>(i) / static_cast<double>(n_points - 1);
    const double eta = x.dot(fit.beta);
    const double se = std::sqrt(std::max(0.0, x.dot(fit.cov_beta * x)));
    grid.push_back({x[vj], glmm::InverseLogit(eta), glmm::InverseLogit(eta - kZ95 * se),
                    glmm::InverseLogit(eta + kZ95 * se)});
  }
  return grid;
}

}  // namespace gazerev::eval
