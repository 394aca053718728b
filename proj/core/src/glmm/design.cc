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

#include "gazerev/glmm/design.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "gazerev/error.h"

namespace gazerev::glmm {

std::string_view ResponseName(Response response) {
  return response == Response::kRevised ? "revised" : "effective";
}

std::optional<Response> ParseResponse(std::string_view name) {
  if (name == "revised") return Response::kRevised;
  if (name == "effective") return Response::kEffective;
  return std::nullopt;
}

FormulaSpec FormulaSpec::Baseline(Response response) {
  FormulaSpec spec;
  spec.response = response;
  spec.signals = false;
  return spec;
}

FormulaSpec FormulaSpec::Full(Response response) {
  FormulaSpec spec;
  spec.response = response;
  return spec;
}

std::string FormulaSpec::ToString() const {
  std::string out(ResponseName(response));
  out += " ~ 1";
  if (position) out += " + position";
  if (signals) out += " + p_reg + p_skip";
  out += " + (1|text)";
  return out;
}

std::optional<Eigen::Index> DesignMatrix::ColumnIndex(std::string_view name) const {
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j] == name) return static_cast<Eigen::Index>(j);
  }
  return std::nullopt;
}

void DesignMatrix::Validate() const {
  if (x.rows() == 0) throw Error(ErrorKind::kEmptyInput, "design has no rows");
  if (y.size() != x.rows() || static_cast<Eigen::Index>(group.size()) != x.rows()) {
    throw Error(ErrorKind::kSchema, "design vectors have inconsistent lengths");
  }
  if (static_cast<Eigen::Index>(columns.size()) != x.cols() || columns.empty() ||
      columns.front() != kIntercept) {
    throw Error(ErrorKind::kSchema,
                "design must name every column and start with the intercept");
  }
  if (!(x.col(0).array() == 1.0).all()) {
    throw Error(ErrorKind::kSchema, "intercept column is not all ones");
  }
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    if (y[i] != 0.0 && y[i] != 1.0) {
      throw Error(ErrorKind::kSchema, "response must be 0/1");
    }
  }
  if (!x.allFinite()) throw Error(ErrorKind::kSchema, "design has non-finite cells");
  std::vector<int> counts(group_names.size(), 0);
  for (int g : group) {
    if (g < 0 || g >= static_cast<int>(group_names.size())) {
      throw Error(ErrorKind::kIntegrity, "group index out of range");
    }
    ++counts[g];
  }
  for (std::size_t g = 0; g < counts.size(); ++g) {
    if (counts[g] == 0) {
      throw Error(ErrorKind::kIntegrity,
                  "group '" + group_names[g] + "' has no rows");
    }
  }
}

DesignMatrix MakeDesign(Eigen::VectorXd y, Eigen::MatrixXd x,
                        std::vector<std::string> columns,
                        const std::vector<std::string>& group_labels) {
  DesignMatrix d;
  d.y = std::move(y);
  d.x = std::move(x);
  d.columns = std::move(columns);
  d.group_names = group_labels;
  std::sort(d.group_names.begin(), d.group_names.end());
  d.group_names.erase(std::unique(d.group_names.begin(), d.group_names.end()),
                      d.group_names.end());
  d.group.reserve(group_labels.size());
  for (const std::string& label : group_labels) {
    d.group.push_back(static_cast<int>(
        std::lower_bound(d.group_names.begin(), d.group_names.end(), label) -
        d.group_names.begin()));
  }
  d.Validate();
  return d;
}

DesignMatrix BuildDesign(const eval::AnalysisFrame& frame,
                         const FormulaSpec& formula) {
  const auto& rows = frame.rows;
  if (rows.empty()) throw Error(ErrorKind::kEmptyInput, "analysis frame is empty");
  const Eigen::Index n = static_cast<Eigen::Index>(rows.size());

  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    y[i] = formula.response == Response::kRevised ? rows[i].revised
                                                  : rows[i].effective;
  }
  if ((y.array() == y[0]).all()) {
    throw Error(ErrorKind::kDegenerate,
                "response '" + std::string(ResponseName(formula.response)) +
                    "' is constant (" + std::to_string(static_cast<int>(y[0])) +
                    ") over all " + std::to_string(n) + " rows");
  }

  std::vector<std::string> columns{std::string(kIntercept)};
  if (formula.position) columns.emplace_back(kPosition);
  if (formula.signals) {
    columns.emplace_back(kPReg);
    columns.emplace_back(kPSkip);
  }

  std::vector<std::string> warnings;
  Standardization scaling;
  if (formula.position_scaling) {
    scaling = *formula.position_scaling;
  } else {
    double sum = 0.0;
    for (const auto& row : rows) sum += row.position_raw;
    scaling.mean = sum / static_cast<double>(n);
    double ss = 0.0;
    for (const auto& row : rows) {
      ss += (row.position_raw - scaling.mean) * (row.position_raw - scaling.mean);
    }
    scaling.sd = n > 1 ? std::sqrt(ss / static_cast<double>(n - 1)) : 0.0;
    if (!(scaling.sd > 0.0)) {
      warnings.emplace_back("token position is constant; left unscaled");
      scaling.sd = 1.0;
    }
  }

  Eigen::MatrixXd x(n, static_cast<Eigen::Index>(columns.size()));
  std::vector<std::string> labels;
  labels.reserve(rows.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& row = rows[i];
    Eigen::Index j = 0;
    x(i, j++) = 1.0;
    if (formula.position) x(i, j++) = scaling.Apply(row.position_raw);
    if (formula.signals) {
      x(i, j++) = row.p_reg;
      x(i, j++) = row.p_skip;
    }
    labels.push_back(row.text_id);
  }
  for (Eigen::Index j = 1; j < x.cols(); ++j) {
    if ((x.col(j).array() == x(0, j)).all()) {
      warnings.push_back("predictor '" + columns[j] + "' has zero variance");
    }
  }

  DesignMatrix d = MakeDesign(std::move(y), std::move(x), std::move(columns), labels);
  d.position_scaling = scaling;
  d.warnings = std::move(warnings);
  return d;
}

}  // namespace gazerev::glmm
