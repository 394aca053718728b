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

#ifndef GAZEREV_EVAL_PREDICTION_GRID_H_
#define GAZEREV_EVAL_PREDICTION_GRID_H_

#include <string>
#include <vector>

#include "gazerev/eval/frame.h"
#include "gazerev/glmm/glmm.h"

namespace gazerev::eval {

struct GridPoint {
  double x = 0.0;
  double p_hat = 0.0;
  double lo95 = 0.0;
  double hi95 = 0.0;
};

// Population-level predicted revision probability as `predictor` (p_reg or
// p_skip) runs over [0, max observed in the frame] in n_points steps. The
// other predictors are held at their frame means. The band is the normal
// interval on the logit scale, mapped back through the inverse logit.
std::vector<GridPoint> PredictionGrid(const glmm::GlmmFit& fit,
                                      const AnalysisFrame& frame,
                                      const std::string& predictor, int n_points = 50);

}  // namespace gazerev::eval

#endif  // GAZEREV_EVAL_PREDICTION_GRID_H_
