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

// Fit artifacts: a "key = value" text document holding everything needed to
// predict from a fitted model without refitting.
//
//   format = gazerev-fit/1
//   formula = revised ~ 1 + position + p_reg + p_skip + (1|text)
//   columns = intercept,position,p_reg,p_skip
//   position_mean = ...            position_sd = ...
//   n = ...     beta = b0,b1,...   theta = ...
//   theta_estimated = true|false   fallback_glm = true|false
//   converged = true|false         iterations = ...   evaluations = ...
//   loglik = ...   bic = ...
//   cov = row-major p*p values
//   group = <mode>,<name>          (one line per group, ascending name)
//
// Reals are written with 17 significant digits so a reload is exact.

#ifndef GAZEREV_GLMM_FIT_IO_H_
#define GAZEREV_GLMM_FIT_IO_H_

#include <filesystem>
#include <string>
#include <string_view>

#include "gazerev/glmm/glmm.h"

namespace gazerev::glmm {

struct FitArtifact {
  std::string formula;
  GlmmFit fit;
};

std::string FormatFitArtifact(const FitArtifact& artifact);
FitArtifact ParseFitArtifact(std::string_view contents,
                             std::string_view source_name = "<memory>");

void SaveFitArtifact(const FitArtifact& artifact, const std::filesystem::path& path);
FitArtifact LoadFitArtifact(const std::filesystem::path& path);

// %.17g, with "nan"/"inf" spelled portably.
std::string FormatReal(double value);
double ParseReal(std::string_view text);

}  // namespace gazerev::glmm

#endif  // GAZEREV_GLMM_FIT_IO_H_
