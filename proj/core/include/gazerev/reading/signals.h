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

#ifndef GAZEREV_READING_SIGNALS_H_
#define GAZEREV_READING_SIGNALS_H_

#include <map>
#include <string>
#include <vector>

#include "gazerev/reading/reading_table.h"

namespace gazerev::reading {

// Estimated per-token reading signals. Both proportions share the
// non-missing denominator, so p_reg + p_skip <= 1.
struct TokenSignal {
  std::string text_id;
  int ia_index = 0;
  std::string ia_text;
  double p_reg = 0.0;
  double p_skip = 0.0;
  int n_valid = 0;
  int n_regressed = 0;
  int n_skipped = 0;
};

struct TokenSignalTable {
  std::string dataset_id;
  std::vector<TokenSignal> rows;  // sorted by (text_id, ia_index)
  // Number of IAs per text in the source table, including dropped tokens.
  std::map<std::string, int> ia_counts;
  std::vector<std::string> warnings;
};

// Throws kEmptyInput on an empty table. Tokens whose subjects are all
// Missing are dropped with a warning.
TokenSignalTable EstimateTokenProbabilities(const ReadingTable& table);

struct CorrelationReport {
  std::size_t n = 0;
  double pearson = 0.0;
  double spearman = 0.0;  // Pearson on average ranks
};

// Needs >= 3 rows (kEmptyInput) and non-zero variance in both columns
// (kUndefined).
CorrelationReport CorrelateSignals(const TokenSignalTable& signals);

struct SubjectProportion {
  std::string subject_id;
  double p_reg = 0.0;
  double p_skip = 0.0;
  int n_valid = 0;
};

// CSV-ready data behind the by-token / by-subject distribution plots.
struct DistributionSummary {
  std::vector<TokenSignal> tokens;
  std::vector<SubjectProportion> subjects;  // sorted by subject id
  std::vector<std::string> warnings;
};

DistributionSummary SummarizeDistributions(const ReadingTable& table);

}  // namespace gazerev::reading

#endif  // GAZEREV_READING_SIGNALS_H_
