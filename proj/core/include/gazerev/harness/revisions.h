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

// Revision detection over restart-incremental traces.
//
// With L = |steps[t-1]|, timestep t is a revision when the first L labels
// of steps[t] differ from steps[t-1]; labels beyond L are additions and
// never count. A revision is effective when, over those same L positions,
// more labels agree with the final output at t than at t-1. Revisions are
// attributed to the interest area consumed at t.

#ifndef GAZEREV_HARNESS_REVISIONS_H_
#define GAZEREV_HARNESS_REVISIONS_H_

#include <span>
#include <string>
#include <vector>

#include "gazerev/harness/trace.h"

namespace gazerev::harness {

struct RevisionFlag {
  int t = 0;  // 1-based timestep
  bool revised = false;
  bool effective = false;  // implies revised
};

struct RevisionSeries {
  std::string text_id;
  Task task = Task::kPos;
  std::vector<RevisionFlag> flags;  // flags[t - 1]
};

enum class ShrinkPolicy {
  kStrict,   // a shorter sequence at t than at t-1 raises kAlignment
  kLenient,  // compare only the common prefix
};

RevisionSeries DetectRevisions(const IncrementalTrace& trace,
                               ShrinkPolicy policy = ShrinkPolicy::kStrict);

struct RevisionStats {
  std::string labeller_id;
  Task task = Task::kPos;
  long timesteps = 0;
  long revised = 0;
  long effective = 0;
  double all_r = 0.0;  // percentage of timesteps with a revision
  double eff_r = 0.0;  // percentage with an effective revision
};

// One entry per task present in `series`, in canonical task order.
// Timestep 1 counts in the denominator.
std::vector<RevisionStats> ComputeRevisionStats(
    std::span<const RevisionSeries> series, const std::string& labeller_id = "");

}  // namespace gazerev::harness

#endif  // GAZEREV_HARNESS_REVISIONS_H_
