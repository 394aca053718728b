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

// Minimal delimited-text reading and writing (RFC 4180 style quoting).

#ifndef GAZEREV_CSV_H_
#define GAZEREV_CSV_H_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gazerev {

struct DelimitedTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  // 1-based source line number of each row, for error messages.
  std::vector<std::size_t> line_numbers;

  // Index of `name` in the header, if present.
  std::optional<std::size_t> Column(std::string_view name) const;
};

// ',' for .csv, '\t' for everything else (.tsv, .txt, .cfg ...).
char DelimiterForPath(const std::filesystem::path& path);

DelimitedTable ReadDelimited(const std::filesystem::path& path, char delimiter);
DelimitedTable ParseDelimited(std::string_view text, char delimiter,
                              std::string_view source_name = "<memory>");

// Quotes a field only when it contains the delimiter, a quote or a newline.
std::string EscapeField(std::string_view field, char delimiter);
std::string JoinFields(const std::vector<std::string>& fields, char delimiter);

// Reads a whole file; throws Error(kIo) naming the path on failure.
std::string ReadFile(const std::filesystem::path& path);
// Truncates and writes, creating missing parent directories; throws kIo.
void WriteFile(const std::filesystem::path& path, std::string_view contents);

}  // namespace gazerev

#endif  // GAZEREV_CSV_H_
