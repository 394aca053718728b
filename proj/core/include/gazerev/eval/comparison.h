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

// Baseline-vs-full model comparison for one (dataset, labeller, task) cell:
//   baseline:  response ~ position + (1|text)
//   full:      response ~ position + p_reg + p_skip + (1|text)

#ifndef GAZEREV_EVAL_COMPARISON_H_
#define GAZEREV_EVAL_COMPARISON_H_

#include <string>
#include <vector>

#include "gazerev/eval/frame.h"
#include "gazerev/glmm/design.h"
#include "gazerev/glmm/glmm.h"
#include "gazerev/glmm/inference.h"

namespace gazerev::eval {

struct ComparisonOptions {
  glmm::FitOptions fit;
  // Refit both models without position when its Wald p in the full model
  // is >= position_alpha.
  bool drop_nonsig_position = false;
  double position_alpha = 0.05;
};

struct LrtResult {
  double loglik_null = 0.0;
  double loglik_full = 0.0;
  double bic_null = 0.0;
  double bic_full = 0.0;
  double chi2 = 0.0;  // 2 (loglik_full - loglik_null), clamped at 0
  int df = 0;         // difference in fixed-effect counts
  double p = 1.0;
  bool clamped = false;  // a negative statistic was set to 0
};

LrtResult LikelihoodRatioTest(const glmm::GlmmFit& null_fit,
                              const glmm::GlmmFit& full_fit);

struct ComparisonResult {
  glmm::Response response = glmm::Response::kRevised;
  glmm::FormulaSpec null_formula;
  glmm::FormulaSpec full_formula;
  glmm::GlmmFit null_fit;
  glmm::GlmmFit full_fit;
  glmm::DesignMatrix full_design;
  LrtResult lrt;
  std::vector<glmm::WaldRow> null_wald;
  std::vector<glmm::WaldRow> full_wald;
  bool position_dropped = false;
  std::vector<std::string> warnings;
};

// Fit errors are rethrown annotated with (dataset, labeller, task, response).
ComparisonResult RunComparison(const AnalysisFrame& frame, glmm::Response response,
                               const ComparisonOptions& options = {});

}  // namespace gazerev::eval

#endif  // GAZEREV_EVAL_COMPARISON_H_
