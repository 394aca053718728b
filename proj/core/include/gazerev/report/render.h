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

#ifndef GAZEREV_REPORT_RENDER_H_
#define GAZEREV_REPORT_RENDER_H_

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gazerev/report/bundle.h"

namespace gazerev::report {

// "***" below 0.001, "**" below 0.01, "*" below 0.05, otherwise "".
std::string RenderSignificance(double p);

// Single marker used next to permutation-test mean differences: "*" when
// p < 0.001.
std::string RenderPermutationMarker(double p);

// Fixed-point with round-half-even on the exact binary value; "-0.00" is
// printed as "0.00" and NaN as "nan".
std::string FormatFixed(double value, int decimals = 2);

// "<0.001" below 0.001, otherwise three decimals.
std::string FormatPValue(double p);

enum class TableKind { kRevisions, kCoefficients, kLrt, kPredictions };

inline constexpr TableKind kAllTables[] = {TableKind::kRevisions,
                                           TableKind::kCoefficients, TableKind::kLrt,
                                           TableKind::kPredictions};

std::string_view TableKindName(TableKind kind);
std::optional<TableKind> ParseTableKind(std::string_view name);

// A table with `label_columns` leading row labels, an optional header row
// of column groups (label, span) over the value columns, and one header
// row of column names.
struct RenderedTable {
  int label_columns = 0;
  std::vector<std::pair<std::string, int>> groups;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> body;
};

RenderedTable BuildTable(const Bundle& bundle, TableKind kind);

// Space-aligned text; labels left-aligned, values right-aligned.
std::string FormatAligned(const RenderedTable& table);
// One flattened header row ("group column"), then the body.
std::string FormatCsv(const RenderedTable& table);

// <name>.txt and <name>.csv for every table kind, in a fixed order.
std::vector<std::pair<std::string, std::string>> RenderAll(const Bundle& bundle);

}  // namespace gazerev::report

#endif  // GAZEREV_REPORT_RENDER_H_
