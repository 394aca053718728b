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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "gazerev/error.h"
#include "gazerev/reading/reading_table.h"
#include "gazerev/reading/signals.h"

namespace gazerev::reading {
namespace {

ColumnMapping FlagMapping() {
  ColumnMapping m;
  m.dataset_id = "d";
  m.text_id = "text";
  m.ia_index = "ia";
  m.ia_text = "word";
  m.subject_id = "subj";
  m.regression = "reg";
  m.skip = "skip";
  return m;
}

ErrorKind KindOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::kUsage;
}

ReadingTable Table(const std::vector<ReadingLabel>& labels, const std::string& text = "t1",
                   int ia = 1) {
  ReadingTable t;
  t.dataset_id = "d";
  for (std::size_t s = 0; s < labels.size(); ++s) {
    t.rows.push_back({text, ia, "w", "s" + std::to_string(s), labels[s]});
  }
  return t;
}

TEST(LoadReadingTable, MapsFlagsToLabels) {
  const std::string tsv =
      "text\tia\tword\tsubj\tskip\treg\n"
      "t1\t3\taurora\tA\t1\tNA\n"
      "t1\t3\taurora\tB\t0\t1\n"
      "t1\t3\taurora\tC\tNA\tNA\n"
      "t1\t3\taurora\tD\t0\t0\n";
  const ReadingTable table = ParseReadingTable(tsv, '\t', FlagMapping());
  ASSERT_EQ(table.rows.size(), 4u);
  EXPECT_EQ(table.rows[0].label, ReadingLabel::kSkipped);
  EXPECT_EQ(table.rows[1].label, ReadingLabel::kRegressed);
  EXPECT_EQ(table.rows[2].label, ReadingLabel::kMissing);
  EXPECT_EQ(table.rows[3].label, ReadingLabel::kNotRegressed);
  // A single IA, re-based to 1.
  EXPECT_EQ(table.rows[0].ia_index, 1);
  EXPECT_EQ(table.dataset_id, "d");
}

TEST(LoadReadingTable, ReadsCsvWithBooleanWords) {
  const std::string csv =
      "text,ia,word,subj,skip,reg\n"
      "t1,0,The,A,False,True\n"
      "t1,1,\"aurora, bright\",A,True,False\n";
  const ReadingTable table = ParseReadingTable(csv, ',', FlagMapping());
  ASSERT_EQ(table.rows.size(), 2u);
  EXPECT_EQ(table.rows[0].label, ReadingLabel::kRegressed);
  EXPECT_EQ(table.rows[1].label, ReadingLabel::kSkipped);
  EXPECT_EQ(table.rows[1].ia_text, "aurora, bright");
  EXPECT_EQ(table.rows[0].ia_index, 1);
  EXPECT_EQ(table.rows[1].ia_index, 2);
}

TEST(LoadReadingTable, MissingColumnNamesIt) {
  const std::string tsv = "text\tia\tword\tsubj\tskip\nt1\t1\tx\tA\t0\n";
  try {
    ParseReadingTable(tsv, '\t', FlagMapping());
    FAIL() << "expected a schema error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kSchema);
    EXPECT_NE(std::string(e.what()).find("reg"), std::string::npos);
  }
}

TEST(LoadReadingTable, DuplicateRowIsRejected) {
  const std::string tsv =
      "text\tia\tword\tsubj\tskip\treg\n"
      "t1\t1\tx\tA\t0\t0\n"
      "t1\t1\tx\tA\t0\t1\n";
  EXPECT_EQ(KindOf([&] { ParseReadingTable(tsv, '\t', FlagMapping()); }),
            ErrorKind::kDuplicate);
}

TEST(LoadReadingTable, GapInIndicesIsAnIntegrityError) {
  const std::string tsv =
      "text\tia\tword\tsubj\tskip\treg\n"
      "t1\t1\tx\tA\t0\t0\n"
      "t1\t3\ty\tA\t0\t0\n";
  EXPECT_EQ(KindOf([&] { ParseReadingTable(tsv, '\t', FlagMapping()); }),
            ErrorKind::kIntegrity);
}

TEST(LoadReadingTable, MissingFileIsIoErrorNamingPath) {
  try {
    LoadReadingTable("/nonexistent/reading.tsv", FlagMapping());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kIo);
    EXPECT_NE(std::string(e.what()).find("/nonexistent/reading.tsv"), std::string::npos);
  }
}

TEST(NormalizedFormat, RoundTripIsIdentity) {
  ReadingTable t;
  t.dataset_id = "provo";
  const ReadingLabel all[] = {ReadingLabel::kSkipped, ReadingLabel::kNotRegressed,
                              ReadingLabel::kRegressed, ReadingLabel::kMissing};
  for (int text = 0; text < 2; ++text) {
    for (int ia = 1; ia <= 3; ++ia) {
      for (int s = 0; s < 4; ++s) {
        t.rows.push_back({"text" + std::to_string(text), ia, "w" + std::to_string(ia),
                          "s" + std::to_string(s), all[(ia + s + text) % 4]});
      }
    }
  }
  const std::string text = FormatNormalizedReadingTable(t);
  EXPECT_EQ(text.substr(0, text.find('\n')),
            "dataset_id\ttext_id\tia_index\tia_text\tsubject_id\tlabel");
  const ReadingTable back = ParseReadingTable(text, '\t', ColumnMapping::Normalized());
  EXPECT_EQ(back, t);
}

TEST(EstimateTokenProbabilities, DefinitionalProportions) {
  std::vector<ReadingLabel> labels = {
      ReadingLabel::kMissing,      ReadingLabel::kMissing,      ReadingLabel::kSkipped,
      ReadingLabel::kSkipped,      ReadingLabel::kRegressed,    ReadingLabel::kRegressed,
      ReadingLabel::kNotRegressed, ReadingLabel::kNotRegressed, ReadingLabel::kNotRegressed,
      ReadingLabel::kNotRegressed};
  const TokenSignalTable s = EstimateTokenProbabilities(Table(labels));
  ASSERT_EQ(s.rows.size(), 1u);
  EXPECT_DOUBLE_EQ(s.rows[0].p_reg, 0.25);
  EXPECT_DOUBLE_EQ(s.rows[0].p_skip, 0.25);
  EXPECT_EQ(s.rows[0].n_valid, 8);
}

TEST(EstimateTokenProbabilities, AllNotRegressed) {
  const TokenSignalTable s =
      EstimateTokenProbabilities(Table(std::vector(5, ReadingLabel::kNotRegressed)));
  ASSERT_EQ(s.rows.size(), 1u);
  EXPECT_EQ(s.rows[0].p_reg, 0.0);
  EXPECT_EQ(s.rows[0].p_skip, 0.0);
  EXPECT_EQ(s.rows[0].n_valid, 5);
}

TEST(EstimateTokenProbabilities, AllMissingTokenIsDroppedWithWarning) {
  ReadingTable t = Table({ReadingLabel::kRegressed}, "t1", 1);
  t.rows.push_back({"t1", 2, "gone", "s0", ReadingLabel::kMissing});
  const TokenSignalTable s = EstimateTokenProbabilities(t);
  ASSERT_EQ(s.rows.size(), 1u);
  EXPECT_EQ(s.rows[0].ia_index, 1);
  ASSERT_EQ(s.warnings.size(), 1u);
  EXPECT_NE(s.warnings[0].find("gone"), std::string::npos);
  EXPECT_EQ(s.ia_counts.at("t1"), 2);
}

TEST(EstimateTokenProbabilities, EmptyTableIsAnError) {
  EXPECT_EQ(KindOf([] { EstimateTokenProbabilities(ReadingTable{}); }),
            ErrorKind::kEmptyInput);
}

TEST(EstimateTokenProbabilities, PropertiesOnRandomTables) {
  std::mt19937_64 rng(11);
  const ReadingLabel all[] = {ReadingLabel::kSkipped, ReadingLabel::kNotRegressed,
                              ReadingLabel::kRegressed, ReadingLabel::kMissing};
  for (int rep = 0; rep < 50; ++rep) {
    ReadingTable t;
    t.dataset_id = "r";
    const int ias = 1 + static_cast<int>(rng() % 6), subjects = 1 + static_cast<int>(rng() % 7);
    for (int ia = 1; ia <= ias; ++ia) {
      for (int s = 0; s < subjects; ++s) {
        t.rows.push_back({"t", ia, "w", "s" + std::to_string(s), all[rng() % 4]});
      }
    }
    const TokenSignalTable base = EstimateTokenProbabilities(t);
    for (const TokenSignal& row : base.rows) {
      EXPECT_GE(row.n_valid, 1);
      EXPECT_LE(row.p_reg + row.p_skip, 1.0 + 1e-15);
      const double reg_count = row.p_reg * row.n_valid;
      const double skip_count = row.p_skip * row.n_valid;
      EXPECT_NEAR(reg_count, std::round(reg_count), 1e-9);
      EXPECT_NEAR(skip_count, std::round(skip_count), 1e-9);
    }
    // Subject order does not matter.
    ReadingTable shuffled = t;
    std::shuffle(shuffled.rows.begin(), shuffled.rows.end(), rng);
    const TokenSignalTable again = EstimateTokenProbabilities(shuffled);
    ASSERT_EQ(again.rows.size(), base.rows.size());
    for (std::size_t i = 0; i < base.rows.size(); ++i) {
      EXPECT_EQ(again.rows[i].p_reg, base.rows[i].p_reg);
      EXPECT_EQ(again.rows[i].p_skip, base.rows[i].p_skip);
    }
    // Filling a Missing cell never lowers n_valid.
    ReadingTable filled = t;
    for (auto& row : filled.rows) {
      if (row.label == ReadingLabel::kMissing) {
        row.label = ReadingLabel::kRegressed;
        break;
      }
    }
    const TokenSignalTable more = EstimateTokenProbabilities(filled);
    for (const TokenSignal& b : base.rows) {
      const auto it = std::find_if(more.rows.begin(), more.rows.end(), [&](const TokenSignal& m) {
        return m.ia_index == b.ia_index;
      });
      ASSERT_NE(it, more.rows.end());
      EXPECT_GE(it->n_valid, b.n_valid);
    }
  }
}

TokenSignalTable Signals(const std::vector<std::pair<double, double>>& pairs) {
  TokenSignalTable s;
  int ia = 0;
  for (const auto& [reg, skip] : pairs) {
    TokenSignal row;
    row.text_id = "t";
    row.ia_index = ++ia;
    row.p_reg = reg;
    row.p_skip = skip;
    row.n_valid = 10;
    s.rows.push_back(row);
  }
  return s;
}

TEST(CorrelateSignals, IdentityAndPerfectNegative) {
  const auto same = CorrelateSignals(Signals({{0.1, 0.1}, {0.3, 0.3}, {0.2, 0.2}, {0.7, 0.7}}));
  EXPECT_NEAR(same.pearson, 1.0, 1e-12);
  EXPECT_NEAR(same.spearman, 1.0, 1e-12);
  const auto neg = CorrelateSignals(Signals({{0.1, 0.9}, {0.5, 0.5}, {0.25, 0.75}}));
  EXPECT_NEAR(neg.pearson, -1.0, 1e-12);
}

TEST(CorrelateSignals, ThreeRowExample) {
  // Reference value from numpy.corrcoef.
  const auto r = CorrelateSignals(Signals({{0.1, 0.6}, {0.2, 0.5}, {0.4, 0.2}}));
  EXPECT_NEAR(r.pearson, -0.9958705948858225, 1e-12);
  EXPECT_NEAR(r.spearman, -1.0, 1e-12);
  EXPECT_EQ(r.n, 3u);
}

TEST(CorrelateSignals, Errors) {
  EXPECT_EQ(KindOf([] { CorrelateSignals(Signals({{0.1, 0.2}, {0.2, 0.3}})); }),
            ErrorKind::kEmptyInput);
  EXPECT_EQ(KindOf([] { CorrelateSignals(Signals({{0.1, 0.2}, {0.1, 0.3}, {0.1, 0.5}})); }),
            ErrorKind::kUndefined);
}

TEST(SummarizeDistributions, SubjectProportions) {
  ReadingTable t;
  t.dataset_id = "d";
  const ReadingLabel labels[] = {ReadingLabel::kRegressed, ReadingLabel::kSkipped,
                                 ReadingLabel::kNotRegressed, ReadingLabel::kMissing};
  for (int ia = 1; ia <= 4; ++ia) {
    t.rows.push_back({"t", ia, "w", "A", labels[ia - 1]});
    t.rows.push_back({"t", ia, "w", "Z", ReadingLabel::kMissing});
  }
  const DistributionSummary d = SummarizeDistributions(t);
  ASSERT_EQ(d.subjects.size(), 1u);
  EXPECT_EQ(d.subjects[0].subject_id, "A");
  EXPECT_DOUBLE_EQ(d.subjects[0].p_reg, 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(d.subjects[0].p_skip, 1.0 / 3.0);
  EXPECT_EQ(d.subjects[0].n_valid, 3);
  ASSERT_FALSE(d.warnings.empty());
}

TEST(SummarizeDistributions, SingleToken) {
  const DistributionSummary d = SummarizeDistributions(Table({ReadingLabel::kRegressed}));
  ASSERT_EQ(d.tokens.size(), 1u);
  EXPECT_EQ(d.tokens[0].p_reg, 1.0);
  EXPECT_EQ(d.tokens[0].p_skip, 0.0);
}

TEST(ReadingLabel, TokensRoundTrip) {
  for (ReadingLabel l : {ReadingLabel::kSkipped, ReadingLabel::kNotRegressed,
                         ReadingLabel::kRegressed, ReadingLabel::kMissing}) {
    EXPECT_EQ(ParseLabelToken(LabelToken(l)), l);
  }
  EXPECT_EQ(LabelToken(ReadingLabel::kSkipped), "-1");
  EXPECT_EQ(LabelToken(ReadingLabel::kMissing), "NA");
  EXPECT_FALSE(ParseLabelToken("2").has_value());
}

}  // namespace
}  // namespace gazerev::reading
