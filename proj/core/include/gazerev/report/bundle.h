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

// Results bundle: a directory of CSV sections plus manifest.txt, and any
// auxiliary files (fit artifacts, replayed traces) in subdirectories.
//
// Sections and their headers:
//   revision_stats.csv        dataset_id,labeller_id,task,timesteps,revised,effective,all_r,eff_r
//   coefficients.csv          dataset_id,labeller_id,task,response,model,term,estimate,se,z,p
//   lrt.csv                   dataset_id,labeller_id,task,response,loglik_null,loglik_full,
//                             bic_null,bic_full,chi2,df,p,position_dropped,theta_null,
//                             theta_full,fallback_null,fallback_full
//   predictions.csv           dataset_id,labeller_id,task,response,mode,n,n_positive,
//                             abs_mean_diff,perm_p,n_perm,seed,auc
//   grid.csv                  dataset_id,labeller_id,task,response,predictor,x,p_hat,lo95,hi95
//   correlation.csv           dataset_id,n,pearson,spearman
//   join_report.csv           dataset_id,labeller_id,task,joined,dropped_without_signal,
//                             dropped_without_series,texts_without_series
//   token_distribution.csv    dataset_id,text_id,ia_index,ia_text,p_reg,p_skip,n_valid,
//                             n_regressed,n_skipped
//   subject_distribution.csv  dataset_id,subject_id,p_reg,p_skip,n_valid
//   warnings.csv              scope,message
//
// Reals are unrounded (17 significant digits); rounding happens at render.

#ifndef GAZEREV_REPORT_BUNDLE_H_
#define GAZEREV_REPORT_BUNDLE_H_

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "gazerev/csv.h"

namespace gazerev::report {

inline constexpr std::string_view kManifestFile = "manifest.txt";
inline constexpr std::string_view kRevisionStatsFile = "revision_stats.csv";
inline constexpr std::string_view kCoefficientsFile = "coefficients.csv";
inline constexpr std::string_view kLrtFile = "lrt.csv";
inline constexpr std::string_view kPredictionsFile = "predictions.csv";
inline constexpr std::string_view kGridFile = "grid.csv";
inline constexpr std::string_view kCorrelationFile = "correlation.csv";
inline constexpr std::string_view kJoinReportFile = "join_report.csv";
inline constexpr std::string_view kTokenDistributionFile = "token_distribution.csv";
inline constexpr std::string_view kSubjectDistributionFile = "subject_distribution.csv";
inline constexpr std::string_view kWarningsFile = "warnings.csv";

struct SectionSchema {
  std::string_view file;
  std::vector<std::string> header;
};

// Every CSV section a complete bundle holds, in write order.
const std::vector<SectionSchema>& BundleSections();

struct Bundle {
  std::map<std::string, DelimitedTable, std::less<>> tables;
  std::string manifest;
  // Relative path -> contents, e.g. "fits/x.full.fit".
  std::map<std::string, std::string> extra_files;

  // Creates every section with its header and no rows.
  static Bundle Empty();

  // Throws kIntegrity when the section is absent.
  const DelimitedTable& Section(std::string_view file) const;
  DelimitedTable& Section(std::string_view file);

  // Appends a row; throws kSchema when the width does not match the header.
  void AddRow(std::string_view file, std::vector<std::string> row);
};

void WriteBundle(const Bundle& bundle, const std::filesystem::path& dir);

// Throws kIntegrity listing every missing section (and the manifest) when
// the directory does not hold a complete bundle, kSchema on header drift.
Bundle LoadBundle(const std::filesystem::path& dir);

}  // namespace gazerev::report

#endif  // GAZEREV_REPORT_BUNDLE_H_
