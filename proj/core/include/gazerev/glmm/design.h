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

#ifndef GAZEREV_GLMM_DESIGN_H_
#define GAZEREV_GLMM_DESIGN_H_

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gazerev/eval/frame.h"

namespace gazerev::glmm {

enum class Response { kRevised, kEffective };

std::string_view ResponseName(Response response);
std::optional<Response> ParseResponse(std::string_view name);

inline constexpr std::string_view kIntercept = "intercept";
inline constexpr std::string_view kPosition = "position";
inline constexpr std::string_view kPReg = "p_reg";
inline constexpr std::string_view kPSkip = "p_skip";

// Token position enters the model z-scored: (raw - mean) / sd.
struct Standardization {
  double mean = 0.0;
  double sd = 1.0;

  double Apply(double raw) const { return (raw - mean) / sd; }
};

// Which predictors enter the model, besides the intercept and the (1|text)
// random intercept.
struct FormulaSpec {
  Response response = Response::kRevised;
  bool position = true;
  bool signals = true;  // p_reg and p_skip
  // When set, used instead of the constants estimated from the frame.
  std::optional<Standardization> position_scaling;

  // response ~ position + (1|text)
  static FormulaSpec Baseline(Response response);
  // response ~ position + p_reg + p_skip + (1|text)
  static FormulaSpec Full(Response response);

  std::string ToString() const;
};

// Binary response, fixed-effects matrix with named columns (always starting
// with the intercept) and the grouping factor for the random intercept.
struct DesignMatrix {
  Eigen::VectorXd y;
  Eigen::MatrixXd x;
  std::vector<std::string> columns;
  // Per-row index into group_names; group_names sorted ascending.
  std::vector<int> group;
  std::vector<std::string> group_names;
  Standardization position_scaling;
  std::vector<std::string> warnings;

  Eigen::Index rows() const { return x.rows(); }
  Eigen::Index cols() const { return x.cols(); }
  int num_groups() const { return static_cast<int>(group_names.size()); }
  std::optional<Eigen::Index> ColumnIndex(std::string_view name) const;

  // Throws kSchema / kDegenerate / kIntegrity on broken invariants.
  void Validate() const;
};

// Builds y, X and group from the frame. Position is z-scored with the
// sample mean and sd over all frame rows unless the formula pins them.
// Throws kDegenerate when the response is constant; a zero-variance
// predictor only adds a warning.
DesignMatrix BuildDesign(const eval::AnalysisFrame& frame,
                         const FormulaSpec& formula);

// Direct construction, e.g. for simulated data. `x` must already contain
// the intercept column first; group labels are mapped to sorted indices.
DesignMatrix MakeDesign(Eigen::VectorXd y, Eigen::MatrixXd x,
                        std::vector<std::string> columns,
                        const std::vector<std::string>& group_labels);

}  // namespace gazerev::glmm

#endif  // GAZEREV_GLMM_DESIGN_H_
