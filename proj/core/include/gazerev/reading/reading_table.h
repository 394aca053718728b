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

// Per-subject first-pass reading labels for every interest area (IA) of a
// corpus, and the loader that derives them from wide eye-tracking tables.

#ifndef GAZEREV_READING_READING_TABLE_H_
#define GAZEREV_READING_READING_TABLE_H_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gazerev::reading {

// Numeric values match the normalized interchange format.
enum class ReadingLabel {
  kSkipped = -1,
  kNotRegressed = 0,
  kRegressed = 1,
  kMissing = 2,
};

// "-1", "0", "1" or "NA".
std::string_view LabelToken(ReadingLabel label);
std::optional<ReadingLabel> ParseLabelToken(std::string_view token);

struct ReadingRow {
  std::string text_id;
  int ia_index = 0;  // 1-based within the text
  std::string ia_text;
  std::string subject_id;
  ReadingLabel label = ReadingLabel::kMissing;

  bool operator==(const ReadingRow&) const = default;
};

// Invariants (enforced by the loader and Validate()):
//  - ia_index values within a text form a contiguous 1..N range;
//  - at most one row per (text_id, ia_index, subject_id).
struct ReadingTable {
  std::string dataset_id;
  std::vector<ReadingRow> rows;

  bool operator==(const ReadingTable&) const = default;

  // Throws kDuplicate / kIntegrity on invariant violations.
  void Validate() const;
};

// Column names in the source file. Either `label` is set, or both
// `regression` and `skip` are set.
struct ColumnMapping {
  std::string dataset_id;  // used when `dataset_column` is empty
  std::string dataset_column;
  std::string text_id = "text_id";
  std::string ia_index = "ia_index";
  std::string ia_text = "ia_text";
  std::string subject_id = "subject_id";
  std::string regression;  // first-pass regression-out flag
  std::string skip;        // first-pass skip flag
  std::string label;       // precomputed -1/0/1/NA column

  // Mapping for the normalized TSV written by WriteNormalizedReadingTable.
  static ColumnMapping Normalized();
};

// Loads a delimited table (',' for .csv, tab otherwise). Label derivation:
// skip NA -> Missing; skip true -> Skipped; otherwise regression NA ->
// Missing, regression true -> Regressed, false -> NotRegressed. A missing
// key cell also yields Missing. IA indices are shifted so each text starts
// at 1. Row order follows the file.
ReadingTable LoadReadingTable(const std::filesystem::path& path,
                              const ColumnMapping& mapping);

// Same as above from in-memory text (used by tests and the ingest step).
ReadingTable ParseReadingTable(std::string_view contents, char delimiter,
                               const ColumnMapping& mapping,
                               std::string_view source_name = "<memory>");

// Normalized interchange format:
//   dataset_id\ttext_id\tia_index\tia_text\tsubject_id\tlabel
std::string FormatNormalizedReadingTable(const ReadingTable& table);
void WriteNormalizedReadingTable(const ReadingTable& table,
                                 const std::filesystem::path& path);

}  // namespace gazerev::reading

#endif  // GAZEREV_READING_READING_TABLE_H_
