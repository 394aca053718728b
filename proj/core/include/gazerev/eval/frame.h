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

// The analysis frame: one row per token joining human reading signals with
// a labeller's revision decision at the timestep that consumed the token.

#ifndef GAZEREV_EVAL_FRAME_H_
#define GAZEREV_EVAL_FRAME_H_

#include <span>
#include <string>
#include <vector>

#include "gazerev/harness/revisions.h"
#include "gazerev/harness/trace.h"
#include "gazerev/reading/signals.h"

namespace gazerev::eval {

struct FrameRow {
  std::string dataset_id;
  std::string labeller_id;
  harness::Task task = harness::Task::kPos;
  std::string text_id;
  int ia_index = 0;
  int position_raw = 0;  // == ia_index
  double p_reg = 0.0;
  double p_skip = 0.0;
  int revised = 0;
  int effective = 0;
};

// Unique per (dataset, labeller, task, text, ia); rows sorted by that key.
struct AnalysisFrame {
  std::vector<FrameRow> rows;

  // Rows of one (labeller, task) cell, order preserved.
  AnalysisFrame Select(const std::string& labeller_id, harness::Task task) const;
  std::size_t size() const { return rows.size(); }
};

struct JoinReport {
  std::string dataset_id;
  std::string labeller_id;
  harness::Task task = harness::Task::kPos;
  long joined = 0;
  long dropped_without_signal = 0;   // token removed by reading-data
  long dropped_without_series = 0;   // text has no revision series
  std::vector<std::string> texts_without_series;
};

struct AssembledFrame {
  AnalysisFrame frame;
  std::vector<JoinReport> reports;  // one per task present in `series`
};

// Inner join on (text_id, ia_index <-> t). Throws kAlignment, naming the
// text, when a shared text has different IA counts on the two sides.
AssembledFrame AssembleFrame(const reading::TokenSignalTable& signals,
                             std::span<const harness::RevisionSeries> series,
                             const std::string& labeller_id);

}  // namespace gazerev::eval

#endif  // GAZEREV_EVAL_FRAME_H_
