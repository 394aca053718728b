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

#include "gazerev/glmm/fit_io.h"

#include <fmt/format.h>

#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <vector>

#include "gazerev/csv.h"
#include "gazerev/error.h"
#include "gazerev/glmm/inference.h"

namespace gazerev::glmm {
namespace {

constexpr std::string_view kFormat = "gazerev-fit/1";

std::vector<std::string_view> SplitCommas(std::string_view text) {
  std::vector<std::string_view> out;
  if (text.empty()) return out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t end = text.find(',', start);
    out.push_back(text.substr(start, end == std::string_view::npos ? end : end - start));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return out;
}

std::string JoinReals(const double* values, Eigen::Index count) {
  std::string out;
  for (Eigen::Index i = 0; i < count; ++i) {
    if (i) out.push_back(',');
    out += FormatReal(values[i]);
  }
  return out;
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

}  // namespace

std::string FormatReal(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  return fmt::format("{:.17g}", value);
}

double ParseReal(std::string_view text) {
  text = Trim(text);
  if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (text == "inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  const std::string copy(text);
  char* end = nullptr;
  const double value = std::strtod(copy.c_str(), &end);
  if (copy.empty() || end != copy.c_str() + copy.size()) {
    throw Error(ErrorKind::kParse, "not a number: '" + copy + "'");
  }
  return value;
}

std::string FormatFitArtifact(const FitArtifact& artifact) {
  const GlmmFit& fit = artifact.fit;
  const Eigen::Index p = fit.beta.size();
  std::string out;
  auto put = [&](std::string_view key, const std::string& value) {
    out += fmt::format("{} = {}\n", key, value);
  };
  put("format", std::string(kFormat));
  put("formula", artifact.formula);
  std::string columns;
  for (const auto& c : fit.columns) columns += (columns.empty() ? "" : ",") + c;
  put("columns", columns);
  put("position_mean", FormatReal(fit.position_scaling.mean));
  put("position_sd", FormatReal(fit.position_scaling.sd));
  put("n", std::to_string(fit.n));
  put("beta", JoinReals(fit.beta.data(), p));
  put("theta", FormatReal(fit.theta));
  put("theta_estimated", fit.theta_estimated ? "true" : "false");
  put("fallback_glm", fit.fallback_glm ? "true" : "false");
  put("converged", fit.converged ? "true" : "false");
  put("iterations", std::to_string(fit.iterations));
  put("evaluations", std::to_string(fit.evaluations));
  put("loglik", FormatReal(fit.loglik));
  put("bic", FormatReal(Bic(fit)));
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> cov =
      fit.cov_beta;
  put("cov", JoinReals(cov.data(), cov.size()));
  for (std::size_t g = 0; g < fit.group_names.size(); ++g) {
    put("group", FormatReal(fit.group_modes[g]) + "," + fit.group_names[g]);
  }
  return out;
}

FitArtifact ParseFitArtifact(std::string_view contents, std::string_view source_name) {
  std::map<std::string, std::string> values;
  FitArtifact artifact;
  GlmmFit& fit = artifact.fit;
  std::size_t line_no = 0, pos = 0;
  auto fail = [&](const std::string& what) {
    return Error(ErrorKind::kParse, std::string(source_name) + ":" +
                                        std::to_string(line_no) + ": " + what);
  };
  while (pos < contents.size()) {
    std::size_t end = contents.find('\n', pos);
    if (end == std::string_view::npos) end = contents.size();
    std::string_view line = Trim(contents.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const std::size_t eq = line.find(" = ");
    if (eq == std::string_view::npos) throw fail("expected 'key = value'");
    const std::string key(Trim(line.substr(0, eq)));
    const std::string_view value = line.substr(eq + 3);
    if (key == "group") {
      const std::size_t comma = value.find(',');
      if (comma == std::string_view::npos) throw fail("group line needs 'mode,name'");
      fit.group_modes.push_back(ParseReal(value.substr(0, comma)));
      fit.group_names.emplace_back(value.substr(comma + 1));
      continue;
    }
    values[key] = std::string(value);
  }
  auto require = [&](const std::string& key) -> const std::string& {
    auto it = values.find(key);
    if (it == values.end()) {
      throw Error(ErrorKind::kParse,
                  std::string(source_name) + ": missing key '" + key + "'");
    }
    return it->second;
  };
  if (require("format") != kFormat) {
    throw Error(ErrorKind::kParse, std::string(source_name) +
                                       ": unsupported format '" +
                                       values["format"] + "'");
  }
  artifact.formula = require("formula");
  for (auto c : SplitCommas(require("columns"))) fit.columns.emplace_back(c);
  const Eigen::Index p = static_cast<Eigen::Index>(fit.columns.size());
  fit.position_scaling.mean = ParseReal(require("position_mean"));
  fit.position_scaling.sd = ParseReal(require("position_sd"));
  fit.n = std::stol(require("n"));
  auto beta = SplitCommas(require("beta"));
  auto cov = SplitCommas(require("cov"));
  if (static_cast<Eigen::Index>(beta.size()) != p ||
      static_cast<Eigen::Index>(cov.size()) != p * p) {
    throw Error(ErrorKind::kParse, std::string(source_name) +
                                       ": beta/cov sizes do not match columns");
  }
  fit.beta.resize(p);
  for (Eigen::Index j = 0; j < p; ++j) fit.beta[j] = ParseReal(beta[j]);
  fit.cov_beta.resize(p, p);
  for (Eigen::Index i = 0; i < p; ++i) {
    for (Eigen::Index j = 0; j < p; ++j) fit.cov_beta(i, j) = ParseReal(cov[i * p + j]);
  }
  fit.theta = ParseReal(require("theta"));
  fit.theta_estimated = require("theta_estimated") == "true";
  fit.fallback_glm = require("fallback_glm") == "true";
  fit.converged = require("converged") == "true";
  fit.iterations = std::stoi(require("iterations"));
  fit.evaluations = std::stoi(require("evaluations"));
  fit.loglik = ParseReal(require("loglik"));
  return artifact;
}

void SaveFitArtifact(const FitArtifact& artifact, const std::filesystem::path& path) {
  WriteFile(path, FormatFitArtifact(artifact));
}

FitArtifact LoadFitArtifact(const std::filesystem::path& path) {
  return ParseFitArtifact(ReadFile(path), path.string());
}

}  // namespace gazerev::glmm
