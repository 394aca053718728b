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

#include "gazerev/reading/reading_table.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <set>
#include <tuple>

#include "gazerev/csv.h"
#include "gazerev/error.h"

namespace gazerev::reading {
namespace {

bool IsNa(std::string_view cell) {
  return cell.empty() || cell == "NA" || cell == "NaN" || cell == "nan" ||
         cell == "N/A" || cell == "na";
}

// Parses a 0/1-style flag. nullopt means NA.
std::optional<bool> ParseFlag(std::string_view cell, std::string_view column,
                              std::string_view where) {
  if (IsNa(cell)) return std::nullopt;
  if (cell == "True" || cell == "true" || cell == "TRUE") return true;
  if (cell == "False" || cell == "false" || cell == "FALSE") return false;
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc() || ptr != cell.data() + cell.size()) {
    throw Error(ErrorKind::kParse, std::string(where) + ": column '" +
                                       std::string(column) +
                                       "' has non-flag value '" +
                                       std::string(cell) + "'");
  }
  if (std::isnan(value)) return std::nullopt;
  return value != 0.0;
}

long ParseIndex(std::string_view cell, std::string_view where) {
  long value = 0;
  auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec == std::errc() && ptr == cell.data() + cell.size()) return value;
  // Some exports write indices as floats ("3.0").
  double as_double = 0.0;
  auto [dptr, dec] =
      std::from_chars(cell.data(), cell.data() + cell.size(), as_double);
  if (dec == std::errc() && dptr == cell.data() + cell.size() &&
      as_double == std::floor(as_double)) {
    return static_cast<long>(as_double);
  }
  throw Error(ErrorKind::kParse, std::string(where) +
                                     ": IA index is not an integer: '" +
                                     std::string(cell) + "'");
}

std::size_t RequireColumn(const DelimitedTable& table, const std::string& name,
                          std::string_view source) {
  auto column = table.Column(name);
  if (!column) {
    throw Error(ErrorKind::kSchema, std::string(source) +
                                        ": missing mapped column '" + name +
                                        "'");
  }
  return *column;
}

}  // namespace

std::string_view LabelToken(ReadingLabel label) {
  switch (label) {
    case ReadingLabel::kSkipped: return "-1";
    case ReadingLabel::kNotRegressed: return "0";
    case ReadingLabel::kRegressed: return "1";
    case ReadingLabel::kMissing: return "NA";
  }
  return "NA";
}

std::optional<ReadingLabel> ParseLabelToken(std::string_view token) {
  if (IsNa(token)) return ReadingLabel::kMissing;
  if (token == "-1" || token == "-1.0") return ReadingLabel::kSkipped;
  if (token == "0" || token == "0.0") return ReadingLabel::kNotRegressed;
  if (token == "1" || token == "1.0") return ReadingLabel::kRegressed;
  return std::nullopt;
}

ColumnMapping ColumnMapping::Normalized() {
  ColumnMapping mapping;
  mapping.dataset_column = "dataset_id";
  mapping.label = "label";
  return mapping;
}

void ReadingTable::Validate() const {
  std::set<std::tuple<std::string_view, int, std::string_view>> seen;
  std::map<std::string_view, std::set<int>> indices;
  for (const ReadingRow& row : rows) {
    if (!seen.emplace(row.text_id, row.ia_index, row.subject_id).second) {
      throw Error(ErrorKind::kDuplicate,
                  "duplicate row for text '" + row.text_id + "', IA " +
                      std::to_string(row.ia_index) + ", subject '" +
                      row.subject_id + "'");
    }
    indices[row.text_id].insert(row.ia_index);
  }
  for (const auto& [text, ias] : indices) {
    int expected = 1;
    for (int ia : ias) {
      if (ia != expected) {
        throw Error(ErrorKind::kIntegrity,
                    "text '" + std::string(text) +
                        "' has non-contiguous IA indices (expected " +
                        std::to_string(expected) + ", found " +
                        std::to_string(ia) + ")");
      }
      ++expected;
    }
  }
}

ReadingTable ParseReadingTable(std::string_view contents, char delimiter,
                               const ColumnMapping& mapping,
                               std::string_view source_name) {
  DelimitedTable raw = ParseDelimited(contents, delimiter, source_name);
  const bool use_label = !mapping.label.empty();
  if (!use_label && (mapping.regression.empty() || mapping.skip.empty())) {
    throw Error(ErrorKind::kSchema,
                "column mapping needs either a label column or both "
                "regression and skip columns");
  }

  const std::size_t text_col = RequireColumn(raw, mapping.text_id, source_name);
  const std::size_t ia_col = RequireColumn(raw, mapping.ia_index, source_name);
  const std::size_t ia_text_col =
      RequireColumn(raw, mapping.ia_text, source_name);
  const std::size_t subject_col =
      RequireColumn(raw, mapping.subject_id, source_name);
  std::size_t label_col = 0, reg_col = 0, skip_col = 0;
  if (use_label) {
    label_col = RequireColumn(raw, mapping.label, source_name);
  } else {
    reg_col = RequireColumn(raw, mapping.regression, source_name);
    skip_col = RequireColumn(raw, mapping.skip, source_name);
  }
  std::optional<std::size_t> dataset_col;
  if (!mapping.dataset_column.empty()) {
    dataset_col = RequireColumn(raw, mapping.dataset_column, source_name);
  }

  ReadingTable table;
  table.dataset_id = mapping.dataset_id;
  std::vector<long> raw_index;
  raw_index.reserve(raw.rows.size());
  table.rows.reserve(raw.rows.size());

  for (std::size_t r = 0; r < raw.rows.size(); ++r) {
    const auto& cells = raw.rows[r];
    const std::string where =
        std::string(source_name) + ":" + std::to_string(raw.line_numbers[r]);
    if (dataset_col) {
      const std::string& id = cells[*dataset_col];
      if (table.dataset_id.empty()) {
        table.dataset_id = id;
      } else if (id != table.dataset_id && mapping.dataset_id.empty()) {
        throw Error(ErrorKind::kIntegrity,
                    where + ": mixed dataset ids '" + table.dataset_id +
                        "' and '" + id + "'");
      }
    }
    for (std::size_t key : {text_col, ia_col, subject_col}) {
      if (IsNa(cells[key]) && key != ia_col) {
        throw Error(ErrorKind::kParse,
                    where + ": empty key cell in column '" + raw.header[key] +
                        "'");
      }
    }
    ReadingRow row;
    row.text_id = cells[text_col];
    raw_index.push_back(ParseIndex(cells[ia_col], where));
    row.ia_text = cells[ia_text_col];
    row.subject_id = cells[subject_col];
    if (use_label) {
      auto label = ParseLabelToken(cells[label_col]);
      if (!label) {
        throw Error(ErrorKind::kParse, where + ": label '" + cells[label_col] +
                                           "' is not one of -1, 0, 1, NA");
      }
      row.label = *label;
    } else {
      const auto skipped = ParseFlag(cells[skip_col], mapping.skip, where);
      if (!skipped) {
        row.label = ReadingLabel::kMissing;
      } else if (*skipped) {
        row.label = ReadingLabel::kSkipped;
      } else {
        const auto regressed =
            ParseFlag(cells[reg_col], mapping.regression, where);
        if (!regressed) row.label = ReadingLabel::kMissing;
        else row.label = *regressed ? ReadingLabel::kRegressed
                                    : ReadingLabel::kNotRegressed;
      }
    }
    table.rows.push_back(std::move(row));
  }

  // Shift each text's indices so the smallest becomes 1.
  std::map<std::string, long> min_index;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    auto [it, inserted] = min_index.emplace(table.rows[r].text_id, raw_index[r]);
    if (!inserted) it->second = std::min(it->second, raw_index[r]);
  }
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    table.rows[r].ia_index =
        static_cast<int>(raw_index[r] - min_index[table.rows[r].text_id] + 1);
  }

  table.Validate();
  return table;
}

ReadingTable LoadReadingTable(const std::filesystem::path& path,
                              const ColumnMapping& mapping) {
  return ParseReadingTable(ReadFile(path), DelimiterForPath(path), mapping,
                           path.string());
}

std::string FormatNormalizedReadingTable(const ReadingTable& table) {
  std::string out = "dataset_id\ttext_id\tia_index\tia_text\tsubject_id\tlabel\n";
  for (const ReadingRow& row : table.rows) {
    out += JoinFields({table.dataset_id, row.text_id,
                       std::to_string(row.ia_index), row.ia_text,
                       row.subject_id, std::string(LabelToken(row.label))},
                      '\t');
    out.push_back('\n');
  }
  return out;
}

void WriteNormalizedReadingTable(const ReadingTable& table,
                                 const std::filesystem::path& path) {
  WriteFile(path, FormatNormalizedReadingTable(table));
}

}  // namespace gazerev::reading
