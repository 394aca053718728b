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

#include "gazerev/report/bundle.h"

#include <system_error>

#include "gazerev/error.h"

namespace gazerev::report {

const std::vector<SectionSchema>& BundleSections() {
  static const std::vector<SectionSchema> kSections = {
      {kRevisionStatsFile,
       {"dataset_id", "labeller_id", "task", "timesteps", "revised", "effective", "all_r",
        "eff_r"}},
      {kCoefficientsFile,
       {"dataset_id", "labeller_id", "task", "response", "model", "term", "estimate", "se",
        "z", "p"}},
      {kLrtFile,
       {"dataset_id", "labeller_id", "task", "response", "loglik_null", "loglik_full",
        "bic_null", "bic_full", "chi2", "df", "p", "position_dropped", "theta_null",
        "theta_full", "fallback_null", "fallback_full"}},
      {kPredictionsFile,
       {"dataset_id", "labeller_id", "task", "response", "mode", "n", "n_positive",
        "abs_mean_diff", "perm_p", "n_perm", "seed", "auc"}},
      {kGridFile,
       {"dataset_id", "labeller_id", "task", "response", "predictor", "x", "p_hat", "lo95",
        "hi95"}},
      {kCorrelationFile, {"dataset_id", "n", "pearson", "spearman"}},
      {kJoinReportFile,
       {"dataset_id", "labeller_id", "task", "joined", "dropped_without_signal",
        "dropped_without_series", "texts_without_series"}},
      {kTokenDistributionFile,
       {"dataset_id", "text_id", "ia_index", "ia_text", "p_reg", "p_skip", "n_valid",
        "n_regressed", "n_skipped"}},
      {kSubjectDistributionFile, {"dataset_id", "subject_id", "p_reg", "p_skip", "n_valid"}},
      {kWarningsFile, {"scope", "message"}},
  };
  return kSections;
}

Bundle Bundle::Empty() {
  Bundle bundle;
  for (const SectionSchema& s : BundleSections()) {
    bundle.tables[std::string(s.file)].header = s.header;
  }
  return bundle;
}

const DelimitedTable& Bundle::Section(std::string_view file) const {
  const auto it = tables.find(file);
  if (it == tables.end()) {
    throw Error(ErrorKind::kIntegrity, "bundle has no section '" + std::string(file) + "'");
  }
  return it->second;
}

DelimitedTable& Bundle::Section(std::string_view file) {
  const auto it = tables.find(file);
  if (it == tables.end()) {
    throw Error(ErrorKind::kIntegrity, "bundle has no section '" + std::string(file) + "'");
  }
  return it->second;
}

void Bundle::AddRow(std::string_view file, std::vector<std::string> row) {
  DelimitedTable& table = Section(file);
  if (row.size() != table.header.size()) {
    throw Error(ErrorKind::kSchema, "row for '" + std::string(file) + "' has " +
                                        std::to_string(row.size()) + " fields, expected " +
                                        std::to_string(table.header.size()));
  }
  table.rows.push_back(std::move(row));
  table.line_numbers.push_back(table.rows.size() + 1);
}

void WriteBundle(const Bundle& bundle, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw Error(ErrorKind::kIo, "cannot create directory '" + dir.string() +
                                    "': " + ec.message());
  }
  for (const auto& [name, table] : bundle.tables) {
    std::string out = JoinFields(table.header, ',') + "\n";
    for (const auto& row : table.rows) out += JoinFields(row, ',') + "\n";
    WriteFile(dir / name, out);
  }
  WriteFile(dir / kManifestFile, bundle.manifest);
  for (const auto& [relative, contents] : bundle.extra_files) {
    const std::filesystem::path path = dir / relative;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) {
      throw Error(ErrorKind::kIo, "cannot create directory '" +
                                      path.parent_path().string() + "': " + ec.message());
    }
    WriteFile(path, contents);
  }
}

Bundle LoadBundle(const std::filesystem::path& dir) {
  std::vector<std::string> missing;
  if (!std::filesystem::is_regular_file(dir / kManifestFile)) {
    missing.emplace_back(kManifestFile);
  }
  for (const SectionSchema& s : BundleSections()) {
    if (!std::filesystem::is_regular_file(dir / s.file)) missing.emplace_back(s.file);
  }
  if (!missing.empty()) {
    std::string list;
    for (const auto& m : missing) list += (list.empty() ? "" : ", ") + m;
    throw Error(ErrorKind::kIntegrity,
                "incomplete bundle '" + dir.string() + "': missing " + list);
  }
  Bundle bundle;
  bundle.manifest = ReadFile(dir / kManifestFile);
  for (const SectionSchema& s : BundleSections()) {
    DelimitedTable table = ReadDelimited(dir / s.file, ',');
    if (table.header != s.header) {
      throw Error(ErrorKind::kSchema, "section '" + std::string(s.file) +
                                          "' has an unexpected header");
    }
    bundle.tables[std::string(s.file)] = std::move(table);
  }
  return bundle;
}

}  // namespace gazerev::report
