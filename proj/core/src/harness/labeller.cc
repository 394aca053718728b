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

#include "gazerev/harness/labeller.h"

#include <algorithm>

#include "gazerev/error.h"

namespace gazerev::harness {

std::vector<std::string_view> SplitPrefix(std::string_view prefix) {
  std::vector<std::string_view> tokens;
  std::size_t start = 0;
  while (start <= prefix.size()) {
    std::size_t end = prefix.find(' ', start);
    if (end == std::string_view::npos) end = prefix.size();
    if (end > start) tokens.push_back(prefix.substr(start, end - start));
    start = end + 1;
  }
  return tokens;
}

TaskLabels ToySuffixLabeller::Label(std::string_view, std::string_view prefix,
                                    std::span<const Task> tasks) {
  const std::size_t n = SplitPrefix(prefix).size();
  LabelSequence labels(n, "I");
  if (n > 0) labels.back() = "B";
  TaskLabels out;
  for (Task task : tasks) out[task] = labels;
  return out;
}

TaskLabels ConstantLabeller::Label(std::string_view, std::string_view prefix,
                                   std::span<const Task> tasks) {
  LabelSequence labels(SplitPrefix(prefix).size(), label_);
  TaskLabels out;
  for (Task task : tasks) out[task] = labels;
  return out;
}

std::unique_ptr<LabellerSession> MakeToySuffixLabeller() {
  return std::make_unique<ToySuffixLabeller>();
}

std::unique_ptr<LabellerSession> MakeLabeller(const std::string& command) {
  if (command == "builtin:toy_suffix") return MakeToySuffixLabeller();
  if (command == "builtin:constant") return std::make_unique<ConstantLabeller>();
  if (command.starts_with("builtin:")) {
    throw Error(ErrorKind::kUsage, "unknown builtin labeller '" + command +
                                       "' (expected builtin:toy_suffix or "
                                       "builtin:constant)");
  }
  return std::make_unique<SubprocessLabeller>(command);
}

std::vector<IncrementalTrace> ReplayIncremental(
    std::string_view text_id, std::span<const std::string> ias,
    LabellerSession& session, std::span<const Task> tasks, bool allow_shrink) {
  if (ias.empty()) {
    throw Error(ErrorKind::kEmptyInput,
                "text '" + std::string(text_id) + "' has no interest areas");
  }
  std::vector<Task> sorted(tasks.begin(), tasks.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<IncrementalTrace> traces;
  for (Task task : sorted) {
    traces.push_back(IncrementalTrace{std::string(text_id), task, {}});
    traces.back().steps.reserve(ias.size());
  }

  std::string prefix;
  for (std::size_t t = 1; t <= ias.size(); ++t) {
    if (t > 1) prefix.push_back(' ');
    prefix += ias[t - 1];
    const std::string where =
        "text '" + std::string(text_id) + "', t=" + std::to_string(t);
    TaskLabels labels;
    try {
      labels = session.Label(text_id, prefix, sorted);
    } catch (const Error& e) {
      throw Error(ErrorKind::kTransport, where + ": " + e.what());
    } catch (const std::exception& e) {
      throw Error(ErrorKind::kTransport, where + ": " + e.what());
    }
    for (IncrementalTrace& trace : traces) {
      auto it = labels.find(trace.task);
      if (it == labels.end()) {
        throw Error(ErrorKind::kTransport,
                    where + ": labeller returned no labels for task '" +
                        std::string(TaskName(trace.task)) + "'");
      }
      if (!allow_shrink && !trace.steps.empty() &&
          it->second.size() < trace.steps.back().size()) {
        throw Error(ErrorKind::kAlignment,
                    where + ": " + std::string(TaskName(trace.task)) +
                        " labels shrank from " +
                        std::to_string(trace.steps.back().size()) + " to " +
                        std::to_string(it->second.size()));
      }
      trace.steps.push_back(std::move(it->second));
    }
  }
  return traces;
}

}  // namespace gazerev::harness
