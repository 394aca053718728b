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

#include "gazerev/harness/revisions.h"

#include <algorithm>
#include <map>

#include "gazerev/error.h"

namespace gazerev::harness {
namespace {

std::size_t CountMatches(const LabelSequence& labels,
                         const LabelSequence& reference, std::size_t length) {
  std::size_t matches = 0;
  for (std::size_t i = 0; i < length; ++i) {
    if (labels[i] == reference[i]) ++matches;
  }
  return matches;
}

}  // namespace

RevisionSeries DetectRevisions(const IncrementalTrace& trace,
                               ShrinkPolicy policy) {
  if (trace.steps.empty()) {
    throw Error(ErrorKind::kEmptyInput,
                "trace for text '" + trace.text_id + "' has no timesteps");
  }
  RevisionSeries series{trace.text_id, trace.task, {}};
  series.flags.reserve(trace.steps.size());
  series.flags.push_back({1, false, false});
  const LabelSequence& final_output = trace.final_output();

  for (std::size_t t = 1; t < trace.steps.size(); ++t) {
    const LabelSequence& previous = trace.steps[t - 1];
    const LabelSequence& current = trace.steps[t];
    std::size_t length = previous.size();
    if (current.size() < length) {
      if (policy == ShrinkPolicy::kStrict) {
        throw Error(ErrorKind::kAlignment,
                    "text '" + trace.text_id + "', task " +
                        std::string(TaskName(trace.task)) + ", t=" +
                        std::to_string(t + 1) + ": label sequence shrank from " +
                        std::to_string(length) + " to " +
                        std::to_string(current.size()));
      }
      length = current.size();
    }
    const bool revised =
        !std::equal(current.begin(), current.begin() + length, previous.begin());
    bool effective = false;
    if (revised) {
      const std::size_t overlap = std::min(length, final_output.size());
      effective = CountMatches(current, final_output, overlap) >
                  CountMatches(previous, final_output, overlap);
    }
    series.flags.push_back({static_cast<int>(t + 1), revised, effective});
  }
  return series;
}

std::vector<RevisionStats> ComputeRevisionStats(
    std::span<const RevisionSeries> series, const std::string& labeller_id) {
  if (series.empty()) {
    throw Error(ErrorKind::kEmptyInput, "no revision series to summarize");
  }
  std::map<Task, RevisionStats> by_task;
  for (const RevisionSeries& s : series) {
    RevisionStats& stats = by_task[s.task];
    stats.labeller_id = labeller_id;
    stats.task = s.task;
    for (const RevisionFlag& flag : s.flags) {
      ++stats.timesteps;
      stats.revised += flag.revised;
      stats.effective += flag.effective;
    }
  }
  std::vector<RevisionStats> out;
  for (auto& [task, stats] : by_task) {
    if (stats.timesteps > 0) {
      stats.all_r = 100.0 * static_cast<double>(stats.revised) /
                    static_cast<double>(stats.timesteps);
      stats.eff_r = 100.0 * static_cast<double>(stats.effective) /
                    static_cast<double>(stats.timesteps);
    }
    out.push_back(stats);
  }
  return out;
}

}  // namespace gazerev::harness
