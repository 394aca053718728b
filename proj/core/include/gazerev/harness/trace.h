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

#ifndef GAZEREV_HARNESS_TRACE_H_
#define GAZEREV_HARNESS_TRACE_H_

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gazerev::harness {

// Declaration order is the canonical serialization order.
enum class Task { kPos, kHead, kDeprel };

inline constexpr Task kAllTasks[] = {Task::kPos, Task::kHead, Task::kDeprel};

std::string_view TaskName(Task task);
std::optional<Task> ParseTask(std::string_view name);
// Comma-separated list, e.g. "pos,deprel". Throws kUsage on unknown names.
std::vector<Task> ParseTaskList(std::string_view list);

// Labels are opaque and compared by exact, case-sensitive equality. Head
// labels are decimal 0-based token indices (-1 for root).
using LabelSequence = std::vector<std::string>;

// Restart-incremental output of one labeller on one text for one task.
// steps[t - 1] is the full output after consuming interest areas 1..t.
struct IncrementalTrace {
  std::string text_id;
  Task task = Task::kPos;
  std::vector<LabelSequence> steps;

  std::size_t size() const { return steps.size(); }
  const LabelSequence& final_output() const { return steps.back(); }

  bool operator==(const IncrementalTrace&) const = default;
};

// JSON Lines, one record per (text, timestep):
//   {"text_id":"t1","t":2,"tasks":{"pos":["DET","NOUN"]}}
// Traces of the same text are merged into one record per timestep; texts
// are written in input order, tasks in canonical order. All traces of a
// text must share the same length.
std::string FormatTrace(std::span<const IncrementalTrace> traces);
void SaveTrace(std::span<const IncrementalTrace> traces,
               const std::filesystem::path& path);

// Inverse of FormatTrace. Within a text, t must run 1, 2, 3, ... and every
// record must carry the same task set; violations raise kParse with the
// line number. Output order: texts in file order, tasks canonical.
std::vector<IncrementalTrace> ParseTrace(std::string_view contents,
                                         std::string_view source_name = "<memory>");
std::vector<IncrementalTrace> LoadTrace(const std::filesystem::path& path);

}  // namespace gazerev::harness

#endif  // GAZEREV_HARNESS_TRACE_H_
