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

// Built-in fixtures: a 4-IA toy text, a hand-built trace with revisions at
// t = 3 and t = 5, and a simulated study where revisions follow a known
// logistic model of the token's regression and skip probabilities.

#ifndef GAZEREV_REPORT_SYNTHETIC_H_
#define GAZEREV_REPORT_SYNTHETIC_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "gazerev/harness/trace.h"
#include "gazerev/reading/reading_table.h"
#include "gazerev/report/bundle.h"

namespace gazerev::report {

// One text "toy" with IAs "The aurora was bright" and two subjects.
reading::ReadingTable ToyReadingTable();

// POS-style trace of "Each one of us by now" whose prefix edits happen at
// t = 3 and t = 5 only.
harness::IncrementalTrace EachOneTrace();

struct SyntheticOptions {
  int texts = 20;
  int ias_per_text = 30;
  int subjects = 20;
  double missing_rate = 0.05;
  // True revision model on the logit scale, with z-scored position and a
  // normal text intercept of sd `theta`.
  double intercept = -0.5;
  double b_position = 0.2;
  double b_reg = 5.0;
  double b_skip = -5.0;
  double theta = 0.5;
  std::uint64_t seed = 20240611;
};

struct SyntheticStudy {
  reading::ReadingTable reading;
  std::vector<harness::IncrementalTrace> traces;  // task pos
  long revisions = 0;
};

// Subjects draw per-token labels from latent, negatively related skip and
// regression rates. Revision events are then drawn from the observed token
// proportions. The labeller writes "T" for each new token and rewrites the
// previous token to "F" when a revision fires, so every revision is
// effective.
SyntheticStudy MakeSyntheticStudy(const SyntheticOptions& options = {});

// Writes reading.tsv, trace.jsonl and run.cfg into `dir`; returns run.cfg.
std::filesystem::path WriteSyntheticFixture(const SyntheticStudy& study,
                                            const std::filesystem::path& dir,
                                            std::uint64_t seed, int n_perm = 10000);

struct SelfCheckItem {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SelfCheckReport {
  std::vector<SelfCheckItem> items;
  Bundle bundle;
  std::filesystem::path bundle_dir;

  bool passed() const;
};

// Toy-labeller replay plus the synthetic study end to end through config
// loading, analysis, bundle round trip and rendering, all under work_dir.
SelfCheckReport RunSelfCheck(const std::filesystem::path& work_dir, std::uint64_t seed = 7);

}  // namespace gazerev::report

#endif  // GAZEREV_REPORT_SYNTHETIC_H_
