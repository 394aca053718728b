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

#include "gazerev/eval/frame.h"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "gazerev/error.h"

namespace gazerev::eval {

using harness::RevisionSeries;
using harness::Task;

AnalysisFrame AnalysisFrame::Select(const std::string& labeller_id,
                                    Task task) const {
  AnalysisFrame out;
  for (const FrameRow& row : rows) {
    if (row.labeller_id == labeller_id && row.task == task) out.rows.push_back(row);
  }
  return out;
}

AssembledFrame AssembleFrame(const reading::TokenSignalTable& signals,
                             std::span<const RevisionSeries> series,
                             const std::string& labeller_id) {
  std::map<std::pair<std::string_view, int>, const reading::TokenSignal*> by_key;
  for (const reading::TokenSignal& s : signals.rows) {
    by_key[{s.text_id, s.ia_index}] = &s;
  }

  std::map<Task, JoinReport> reports;
  std::map<Task, std::set<std::string_view>> seen_texts;
  AssembledFrame out;
  for (const RevisionSeries& s : series) {
    JoinReport& report = reports[s.task];
    report.dataset_id = signals.dataset_id;
    report.labeller_id = labeller_id;
    report.task = s.task;
    if (!seen_texts[s.task].insert(s.text_id).second) {
      throw Error(ErrorKind::kDuplicate,
                  "two revision series for text '" + s.text_id + "', task " +
                      std::string(harness::TaskName(s.task)));
    }
    auto count = signals.ia_counts.find(s.text_id);
    if (count == signals.ia_counts.end()) {
      // Text absent from the reading data: every timestep lacks a signal.
      report.dropped_without_signal += static_cast<long>(s.flags.size());
      continue;
    }
    if (static_cast<std::size_t>(count->second) != s.flags.size()) {
      throw Error(ErrorKind::kAlignment,
                  "text '" + s.text_id + "' has " +
                      std::to_string(count->second) +
                      " interest areas in the reading data but " +
                      std::to_string(s.flags.size()) + " timesteps in the " +
                      std::string(harness::TaskName(s.task)) + " trace of '" +
                      labeller_id + "'");
    }
    for (const harness::RevisionFlag& flag : s.flags) {
      auto it = by_key.find({s.text_id, flag.t});
      if (it == by_key.end()) {
        ++report.dropped_without_signal;
        continue;
      }
      FrameRow row;
      row.dataset_id = signals.dataset_id;
      row.labeller_id = labeller_id;
      row.task = s.task;
      row.text_id = s.text_id;
      row.ia_index = flag.t;
      row.position_raw = flag.t;
      row.p_reg = it->second->p_reg;
      row.p_skip = it->second->p_skip;
      row.revised = flag.revised ? 1 : 0;
      row.effective = flag.effective ? 1 : 0;
      out.frame.rows.push_back(std::move(row));
      ++report.joined;
    }
  }

  for (auto& [task, report] : reports) {
    for (const auto& [text, n] : signals.ia_counts) {
      if (seen_texts[task].contains(text)) continue;
      report.texts_without_series.push_back(text);
      report.dropped_without_series += static_cast<long>(
          std::count_if(signals.rows.begin(), signals.rows.end(),
                        [&](const reading::TokenSignal& s) {
                          return s.text_id == text;
                        }));
    }
    out.reports.push_back(std::move(report));
  }

  std::sort(out.frame.rows.begin(), out.frame.rows.end(),
            [](const FrameRow& a, const FrameRow& b) {
              return std::tie(a.labeller_id, a.task, a.text_id, a.ia_index) <
                     std::tie(b.labeller_id, b.task, b.text_id, b.ia_index);
            });
  return out;
}

}  // namespace gazerev::eval
