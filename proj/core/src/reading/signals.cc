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

#include "gazerev/reading/signals.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include "gazerev/error.h"

namespace gazerev::reading {
namespace {

struct Counts {
  std::string ia_text;
  int valid = 0;
  int regressed = 0;
  int skipped = 0;

  void Add(ReadingLabel label) {
    if (label == ReadingLabel::kMissing) return;
    ++valid;
    if (label == ReadingLabel::kRegressed) ++regressed;
    if (label == ReadingLabel::kSkipped) ++skipped;
  }
};

double Pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx <= 0.0 || syy <= 0.0) {
    throw Error(ErrorKind::kUndefined,
                "correlation undefined: zero variance in p_reg or p_skip");
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::vector<double> AverageRanks(const std::vector<double>& values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return values[a] < values[b];
  });
  std::vector<double> ranks(values.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

TokenSignalTable EstimateTokenProbabilities(const ReadingTable& table) {
  if (table.rows.empty()) {
    throw Error(ErrorKind::kEmptyInput,
                "reading table '" + table.dataset_id + "' has no rows");
  }
  std::map<std::pair<std::string, int>, Counts> counts;
  TokenSignalTable out;
  out.dataset_id = table.dataset_id;
  for (const ReadingRow& row : table.rows) {
    Counts& c = counts[{row.text_id, row.ia_index}];
    if (c.ia_text.empty()) c.ia_text = row.ia_text;
    c.Add(row.label);
    int& n = out.ia_counts[row.text_id];
    n = std::max(n, row.ia_index);
  }
  out.rows.reserve(counts.size());
  for (const auto& [key, c] : counts) {
    if (c.valid == 0) {
      out.warnings.push_back("dropped token '" + c.ia_text + "' (text '" +
                             key.first + "', IA " + std::to_string(key.second) +
                             "): no subject with valid data");
      continue;
    }
    TokenSignal s;
    s.text_id = key.first;
    s.ia_index = key.second;
    s.ia_text = c.ia_text;
    s.n_valid = c.valid;
    s.n_regressed = c.regressed;
    s.n_skipped = c.skipped;
    s.p_reg = static_cast<double>(c.regressed) / c.valid;
    s.p_skip = static_cast<double>(c.skipped) / c.valid;
    out.rows.push_back(std::move(s));
  }
  return out;
}

CorrelationReport CorrelateSignals(const TokenSignalTable& signals) {
  if (signals.rows.size() < 3) {
    throw Error(ErrorKind::kEmptyInput,
                "correlation needs at least 3 tokens, got " +
                    std::to_string(signals.rows.size()));
  }
  std::vector<double> reg, skip;
  reg.reserve(signals.rows.size());
  skip.reserve(signals.rows.size());
  for (const TokenSignal& s : signals.rows) {
    reg.push_back(s.p_reg);
    skip.push_back(s.p_skip);
  }
  CorrelationReport report;
  report.n = reg.size();
  report.pearson = Pearson(reg, skip);
  report.spearman = Pearson(AverageRanks(reg), AverageRanks(skip));
  return report;
}

DistributionSummary SummarizeDistributions(const ReadingTable& table) {
  DistributionSummary summary;
  if (!table.rows.empty()) {
    TokenSignalTable tokens = EstimateTokenProbabilities(table);
    summary.tokens = std::move(tokens.rows);
    summary.warnings = std::move(tokens.warnings);
  }
  std::map<std::string, Counts> by_subject;
  for (const ReadingRow& row : table.rows) by_subject[row.subject_id].Add(row.label);
  for (const auto& [subject, c] : by_subject) {
    if (c.valid == 0) {
      summary.warnings.push_back("omitted subject '" + subject +
                                 "': all tokens missing");
      continue;
    }
    summary.subjects.push_back(
        {subject, static_cast<double>(c.regressed) / c.valid,
         static_cast<double>(c.skipped) / c.valid, c.valid});
  }
  return summary;
}

}  // namespace gazerev::reading
