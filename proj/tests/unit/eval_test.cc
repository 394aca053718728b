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
#include "gazerev/eval/comparison.h"
#include "gazerev/eval/discrimination.h"
#include "gazerev/eval/frame.h"
#include "gazerev/eval/prediction_grid.h"
#include "gazerev/glmm/distributions.h"
#include "gazerev/report/synthetic.h"
#include "oracles.h"

namespace gazerev::eval {
namespace {

using harness::RevisionFlag;
using harness::RevisionSeries;
using harness::Task;

ErrorKind KindOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::kUsage;
}

reading::TokenSignalTable Signals() {
  reading::TokenSignalTable t;
  t.dataset_id = "d";
  for (int ia = 1; ia <= 4; ++ia) {
    if (ia == 3) continue;  // dropped upstream: every subject missing
    t.rows.push_back({"a", ia, "w", 0.1 * ia, 0.2, 10, ia, 2});
  }
  t.rows.push_back({"b", 1, "x", 0.5, 0.5, 2, 1, 1});
  t.ia_counts = {{"a", 4}, {"b", 1}};
  return t;
}

RevisionSeries Series(std::string text, std::vector<int> revised) {
  RevisionSeries s;
  s.text_id = std::move(text);
  for (std::size_t i = 0; i < revised.size(); ++i) {
    s.flags.push_back({static_cast<int>(i + 1), revised[i] != 0, revised[i] == 2});
  }
  return s;
}

TEST(Frame, JoinCountsEveryDrop) {
  const std::vector<RevisionSeries> series = {Series("a", {0, 1, 2, 0}),
                                              Series("ghost", {0, 1})};
  const AssembledFrame out = AssembleFrame(Signals(), series, "lab");
  ASSERT_EQ(out.reports.size(), 1u);
  const JoinReport& r = out.reports[0];
  EXPECT_EQ(r.joined, 3);
  EXPECT_EQ(r.dropped_without_signal, 1 + 2);
  EXPECT_EQ(r.dropped_without_series, 1);
  EXPECT_EQ(r.texts_without_series, std::vector<std::string>{"b"});
  ASSERT_EQ(out.frame.size(), 3u);
  EXPECT_EQ(out.frame.rows[1].ia_index, 2);
  EXPECT_EQ(out.frame.rows[1].revised, 1);
  EXPECT_EQ(out.frame.rows[1].effective, 0);
  EXPECT_EQ(out.frame.rows[2].ia_index, 4);
  EXPECT_DOUBLE_EQ(out.frame.rows[2].p_reg, 0.4);
  EXPECT_EQ(out.frame.rows[0].labeller_id, "lab");
}

TEST(Frame, LengthMismatchIsAnAlignmentError) {
  const std::vector<RevisionSeries> series = {Series("a", {0, 1, 0})};
  try {
    AssembleFrame(Signals(), series, "lab");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kAlignment);
    EXPECT_NE(std::string(e.what()).find("'a'"), std::string::npos);
  }
  const std::vector<RevisionSeries> twice = {Series("b", {0}), Series("b", {0})};
  EXPECT_EQ(KindOf([&] { AssembleFrame(Signals(), twice, "lab"); }), ErrorKind::kDuplicate);
}

TEST(Frame, SelectFiltersByLabellerAndTask) {
  AnalysisFrame f;
  f.rows.resize(3);
  f.rows[0].labeller_id = "x";
  f.rows[1].labeller_id = "y";
  f.rows[2].labeller_id = "x";
  f.rows[2].task = Task::kHead;
  EXPECT_EQ(f.Select("x", Task::kPos).size(), 1u);
  EXPECT_EQ(f.Select("x", Task::kHead).size(), 1u);
  EXPECT_EQ(f.Select("z", Task::kPos).size(), 0u);
}

glmm::GlmmFit FitWithLoglik(double ll, int p, bool theta = true) {
  glmm::GlmmFit f;
  f.beta = Eigen::VectorXd::Zero(p);
  f.loglik = ll;
  f.n = 1000;
  f.theta_estimated = theta;
  return f;
}

TEST(Lrt, Examples) {
  const LrtResult same = LikelihoodRatioTest(FitWithLoglik(-510, 2), FitWithLoglik(-510, 4));
  EXPECT_EQ(same.chi2, 0.0);
  EXPECT_EQ(same.p, 1.0);
  EXPECT_EQ(same.df, 2);
  const LrtResult lrt = LikelihoodRatioTest(FitWithLoglik(-520, 2), FitWithLoglik(-510, 4));
  EXPECT_DOUBLE_EQ(lrt.chi2, 20.0);
  EXPECT_NEAR(lrt.p, 4.539992976248486e-05, 1e-15);
  EXPECT_NEAR(lrt.bic_null, 1040 + 3 * std::log(1000.0), 1e-9);
  const LrtResult clamped =
      LikelihoodRatioTest(FitWithLoglik(-509.9, 2), FitWithLoglik(-510, 4));
  EXPECT_TRUE(clamped.clamped);
  EXPECT_EQ(clamped.p, 1.0);
  EXPECT_EQ(KindOf([] { LikelihoodRatioTest(FitWithLoglik(-1, 4), FitWithLoglik(-1, 4)); }),
            ErrorKind::kDomain);
}

TEST(Permutation, SmallExampleMatchesExhaustiveEnumeration) {
  const std::vector<double> scores = {0.9, 0.1, 0.2};
  const std::vector<int> labels = {1, 0, 0};
  EXPECT_NEAR(testing::ExhaustivePermutationP(scores, labels), 1.0 / 3, 1e-15);
  const PermutationResult r = PermutationTest(scores, labels, 10000, 11);
  EXPECT_NEAR(r.observed, 0.75, 1e-15);
  EXPECT_NEAR(r.p_value, 1.0 / 3, 0.02);
  EXPECT_EQ(r.n_permutations, 10000);
  EXPECT_EQ(r.seed, 11u);
}

TEST(Permutation, EqualScoresGiveOne) {
  const std::vector<double> scores(8, 0.3);
  const std::vector<int> labels = {1, 0, 1, 0, 0, 0, 1, 0};
  const PermutationResult r = PermutationTest(scores, labels, 999, 1);
  EXPECT_EQ(r.observed, 0.0);
  EXPECT_EQ(r.p_value, 1.0);
}

TEST(Permutation, DeterministicAndSeedSensitive) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> z;
  std::vector<double> s(60);
  std::vector<int> l(60);
  for (int i = 0; i < 60; ++i) {
    l[i] = i % 3 == 0;
    s[i] = z(rng) + 0.3 * l[i];
  }
  const auto a = PermutationTest(s, l, 2500, 9);
  const auto b = PermutationTest(s, l, 2500, 9);
  EXPECT_EQ(a.p_value, b.p_value);
  bool differs = false;
  for (std::uint64_t seed = 10; seed < 20 && !differs; ++seed) {
    differs = PermutationTest(s, l, 2500, seed).p_value != a.p_value;
  }
  EXPECT_TRUE(differs);
  EXPECT_GE(a.p_value, 1.0 / 2501);
  EXPECT_LE(a.p_value, 1.0);
}

TEST(Permutation, InputErrors) {
  const std::vector<double> s = {0.1, 0.2};
  EXPECT_EQ(KindOf([&] { PermutationTest(s, std::vector<int>{1}); }), ErrorKind::kAlignment);
  EXPECT_EQ(KindOf([&] { PermutationTest(s, std::vector<int>{1, 2}); }), ErrorKind::kDomain);
  EXPECT_EQ(KindOf([&] { PermutationTest(s, std::vector<int>{1, 1}); }),
            ErrorKind::kDegenerate);
  EXPECT_EQ(KindOf([&] { Auc(std::vector<double>{NAN, 1}, std::vector<int>{0, 1}); }),
            ErrorKind::kDomain);
  EXPECT_EQ(KindOf([&] { Auc(s, std::vector<int>{0, 0}); }), ErrorKind::kDegenerate);
}

TEST(Auc, Examples) {
  EXPECT_DOUBLE_EQ(Auc(std::vector<double>{0.1, 0.4, 0.35, 0.8},
                       std::vector<int>{0, 0, 1, 1}),
                   0.75);
  EXPECT_EQ(Auc(std::vector<double>{0.1, 0.2, 0.8, 0.9}, std::vector<int>{0, 0, 1, 1}), 1.0);
  EXPECT_EQ(Auc(std::vector<double>{0.5, 0.5, 0.5}, std::vector<int>{0, 1, 1}), 0.5);
}

TEST(Auc, MatchesPairwiseAndIsRankInvariant) {
  std::mt19937_64 rng(99);
  for (int rep = 0; rep < 200; ++rep) {
    const int n = 2 + static_cast<int>(rng() % 40);
    std::vector<double> s(n);
    std::vector<int> l(n);
    for (int i = 0; i < n; ++i) {
      s[i] = static_cast<double>(rng() % 7) / 7.0;  // ties on purpose
      l[i] = static_cast<int>(rng() % 2);
    }
    l[0] = 0;
    l[1] = 1;
    const double auc = Auc(s, l);
    EXPECT_NEAR(auc, testing::PairwiseAuc(s, l), 1e-12);
    std::vector<double> mono(n), affine(n), neg(n);
    for (int i = 0; i < n; ++i) {
      mono[i] = std::exp(3 * s[i]);
      affine[i] = 2.5 * s[i] - 7;
      neg[i] = -s[i];
    }
    EXPECT_NEAR(Auc(mono, l), auc, 1e-12);
    EXPECT_NEAR(Auc(affine, l), auc, 1e-12);
    EXPECT_NEAR(Auc(neg, l), 1 - auc, 1e-12);
  }
}

TEST(UniformBelow, StaysInRangeAndCoversIt) {
  std::mt19937_64 rng(1);
  std::vector<int> hits(7);
  for (int i = 0; i < 7000; ++i) {
    const auto v = UniformBelow(rng, 7);
    ASSERT_LT(v, 7u);
    ++hits[v];
  }
  for (int h : hits) EXPECT_GT(h, 850);
  EXPECT_EQ(UniformBelow(rng, 1), 0u);
}

// A small frame from the synthetic study, shared by the model-level tests.
const AnalysisFrame& SyntheticFrame() {
  static const AnalysisFrame frame = [] {
    report::SyntheticOptions options;
    options.texts = 12;
    options.ias_per_text = 25;
    const report::SyntheticStudy study = report::MakeSyntheticStudy(options);
    const auto signals = reading::EstimateTokenProbabilities(study.reading);
    std::vector<RevisionSeries> series;
    for (const auto& trace : study.traces) series.push_back(harness::DetectRevisions(trace));
    return AssembleFrame(signals, series, "sim").frame;
  }();
  return frame;
}

TEST(Comparison, FitsBothModelsAndTestsTwoDf) {
  const ComparisonResult r = RunComparison(SyntheticFrame(), glmm::Response::kRevised);
  EXPECT_EQ(r.lrt.df, 2);
  EXPECT_EQ(r.null_wald.size(), 2u);
  EXPECT_EQ(r.full_wald.size(), 4u);
  EXPECT_GE(r.lrt.loglik_full, r.lrt.loglik_null - 1e-8);
  EXPECT_GE(r.lrt.p, 0.0);
  EXPECT_LE(r.lrt.p, 1.0);
  EXPECT_NEAR(r.lrt.p, glmm::Chi2Survival(r.lrt.chi2, 2), 1e-15);
}

TEST(Comparison, DroppingPositionKeepsTwoDf) {
  ComparisonOptions options;
  options.drop_nonsig_position = true;
  options.position_alpha = 0.0;  // every p >= 0, so the refit always happens
  const ComparisonResult r = RunComparison(SyntheticFrame(), glmm::Response::kEffective, options);
  EXPECT_TRUE(r.position_dropped);
  EXPECT_EQ(r.lrt.df, 2);
  EXPECT_EQ(r.null_wald.size(), 1u);
  EXPECT_EQ(r.full_fit.columns,
            (std::vector<std::string>{"intercept", "p_reg", "p_skip"}));
}

TEST(Comparison, ErrorsCarryTheCell) {
  AnalysisFrame f = SyntheticFrame();
  for (auto& row : f.rows) row.revised = 0;
  try {
    RunComparison(f, glmm::Response::kRevised);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kDegenerate);
    const std::string what = e.what();
    EXPECT_NE(what.find("labeller 'sim'"), std::string::npos) << what;
    EXPECT_NE(what.find("response revised"), std::string::npos) << what;
  }
}

TEST(Grid, EndpointsAndBands) {
  const ComparisonResult r = RunComparison(SyntheticFrame(), glmm::Response::kRevised);
  const auto grid = PredictionGrid(r.full_fit, SyntheticFrame(), "p_reg", 11);
  ASSERT_EQ(grid.size(), 11u);
  double max_reg = 0;
  for (const auto& row : SyntheticFrame().rows) max_reg = std::max(max_reg, row.p_reg);
  EXPECT_EQ(grid.front().x, 0.0);
  EXPECT_DOUBLE_EQ(grid.back().x, max_reg);
  for (const auto& g : grid) {
    EXPECT_LE(g.lo95, g.p_hat);
    EXPECT_LE(g.p_hat, g.hi95);
    EXPECT_GT(g.lo95, 0.0);
    EXPECT_LT(g.hi95, 1.0);
  }
  EXPECT_EQ(KindOf([&] { PredictionGrid(r.full_fit, SyntheticFrame(), "position"); }),
            ErrorKind::kUsage);
  EXPECT_EQ(KindOf([&] { PredictionGrid(r.full_fit, SyntheticFrame(), "p_reg", 1); }),
            ErrorKind::kDomain);
  EXPECT_EQ(KindOf([&] { PredictionGrid(r.null_fit, SyntheticFrame(), "p_reg"); }),
            ErrorKind::kSchema);
  EXPECT_EQ(KindOf([&] { PredictionGrid(r.full_fit, AnalysisFrame{}, "p_reg"); }),
            ErrorKind::kEmptyInput);
}

TEST(Grid, ZeroFitIsOneHalfWithKnownBand) {
  glmm::GlmmFit fit;
  fit.columns = {"intercept", "p_reg", "p_skip"};
  fit.beta = Eigen::VectorXd::Zero(3);
  fit.cov_beta = Eigen::MatrixXd::Zero(3, 3);
  AnalysisFrame frame;
  frame.rows.resize(2);
  frame.rows[1].p_skip = 0.4;
  frame.rows[1].p_reg = 0.6;
  for (const auto& g : PredictionGrid(fit, frame, "p_skip", 5)) {
    EXPECT_EQ(g.p_hat, 0.5);
    EXPECT_EQ(g.lo95, 0.5);
    EXPECT_EQ(g.hi95, 0.5);
  }
  fit.cov_beta(0, 0) = 1.0;
  const auto band = PredictionGrid(fit, frame, "p_skip", 2);
  EXPECT_NEAR(band[0].lo95, glmm::InverseLogit(-1.959963984540054), 1e-12);
  EXPECT_NEAR(band[0].hi95, glmm::InverseLogit(1.959963984540054), 1e-12);
}

}  // namespace
}  // namespace gazerev::eval
