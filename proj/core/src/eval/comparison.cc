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

#include "gazerev/eval/comparison.h"

#include <algorithm>

#include "gazerev/error.h"
#include "gazerev/glmm/distributions.h"

namespace gazerev::eval {

using glmm::FormulaSpec;
using glmm::GlmmFit;

LrtResult LikelihoodRatioTest(const GlmmFit& null_fit, const GlmmFit& full_fit) {
  LrtResult lrt;
  lrt.loglik_null = null_fit.loglik;
  lrt.loglik_full = full_fit.loglik;
  lrt.bic_null = glmm::Bic(null_fit);
  lrt.bic_full = glmm::Bic(full_fit);
  lrt.df = static_cast<int>(full_fit.beta.size() - null_fit.beta.size());
  if (lrt.df < 1) {
    throw Error(ErrorKind::kDomain, "full model must have more fixed effects "
                                    "than the baseline model");
  }
  lrt.chi2 = 2.0 * (full_fit.loglik - null_fit.loglik);
  if (lrt.chi2 < 0.0) {
    lrt.chi2 = 0.0;
    lrt.clamped = true;
  }
  lrt.p = glmm::Chi2Survival(lrt.chi2, lrt.df);
  return lrt;
}

ComparisonResult RunComparison(const AnalysisFrame& frame, glmm::Response response,
                               const ComparisonOptions& options) {
  ComparisonResult result;
  result.response = response;
  std::string context = "comparison";
  if (!frame.rows.empty()) {
    const FrameRow& first = frame.rows.front();
    context = "dataset '" + first.dataset_id + "', labeller '" +
              first.labeller_id + "', task " +
              std::string(harness::TaskName(first.task)) + ", response " +
              std::string(glmm::ResponseName(response));
  }

  try {
    result.null_formula = FormulaSpec::Baseline(response);
    result.full_formula = FormulaSpec::Full(response);
    auto fit_pair = [&] {
      const glmm::DesignMatrix null_design = BuildDesign(frame, result.null_formula);
      result.full_design = BuildDesign(frame, result.full_formula);
      result.null_fit = glmm::FitGlmmBinomial(null_design, options.fit);
      result.full_fit = glmm::FitGlmmBinomial(result.full_design, options.fit);
      result.warnings = result.full_design.warnings;
    };
    fit_pair();
    result.full_wald = glmm::WaldTable(result.full_fit);

    if (options.drop_nonsig_position && result.full_formula.position) {
      const auto it = std::find_if(
          result.full_wald.begin(), result.full_wald.end(),
          [](const glmm::WaldRow& row) { return row.term == glmm::kPosition; });
      if (it != result.full_wald.end() && it->p >= options.position_alpha) {
        result.position_dropped = true;
        result.null_formula.position = false;
        result.full_formula.position = false;
        fit_pair();
        result.warnings.push_back("position dropped (Wald p = " +
                                  std::to_string(it->p) + ")");
        result.full_wald = glmm::WaldTable(result.full_fit);
      }
    }
    result.null_wald = glmm::WaldTable(result.null_fit);
    result.lrt = LikelihoodRatioTest(result.null_fit, result.full_fit);
    if (result.lrt.clamped) {
      result.warnings.push_back("negative likelihood-ratio statistic clamped to 0");
    }
    for (const auto& w : result.null_fit.warnings) result.warnings.push_back("baseline: " + w);
    for (const auto& w : result.full_fit.warnings) result.warnings.push_back("full: " + w);
  } catch (const Error& e) {
    throw e.WithContext(context);
  }
  return result;
}

}  // namespace gazerev::eval
