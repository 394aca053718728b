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

#ifndef GAZEREV_HARNESS_LABELLER_H_
#define GAZEREV_HARNESS_LABELLER_H_

#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gazerev/harness/trace.h"

namespace gazerev::harness {

using TaskLabels = std::map<Task, LabelSequence>;

// A labeller that is queried restart-incrementally: every call relabels the
// whole prefix from scratch. Implementations must be deterministic for a
// given prefix. A session is not thread-safe; use one per thread.
class LabellerSession {
 public:
  virtual ~LabellerSession() = default;

  // Returns one label sequence per requested task. Throws on failure.
  virtual TaskLabels Label(std::string_view text_id, std::string_view prefix,
                           std::span<const Task> tasks) = 0;
};

// Splits on single spaces, as the replay joins interest areas.
std::vector<std::string_view> SplitPrefix(std::string_view prefix);

// Labels the last token "B" and every earlier token "I", for all tasks.
class ToySuffixLabeller final : public LabellerSession {
 public:
  TaskLabels Label(std::string_view text_id, std::string_view prefix,
                   std::span<const Task> tasks) override;
};

// Labels every token with the same constant; never revises.
class ConstantLabeller final : public LabellerSession {
 public:
  explicit ConstantLabeller(std::string label = "X") : label_(std::move(label)) {}
  TaskLabels Label(std::string_view text_id, std::string_view prefix,
                   std::span<const Task> tasks) override;

 private:
  std::string label_;
};

std::unique_ptr<LabellerSession> MakeToySuffixLabeller();

// Talks to an external adapter process over its standard input/output using
// the line-delimited JSON wire protocol:
//   request  {"text_id": str, "prefix": str, "tasks": [str]}
//   response {"text_id": str, "tasks": {task: [str]}}  or  {"error": str}
// The command is run through /bin/sh -c. The child is terminated when the
// session is destroyed.
class SubprocessLabeller final : public LabellerSession {
 public:
  explicit SubprocessLabeller(const std::string& command);
  ~SubprocessLabeller() override;

  SubprocessLabeller(const SubprocessLabeller&) = delete;
  SubprocessLabeller& operator=(const SubprocessLabeller&) = delete;

  TaskLabels Label(std::string_view text_id, std::string_view prefix,
                   std::span<const Task> tasks) override;

 private:
  void Shutdown();
  std::string ReadLine();

  std::string command_;
  int pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  std::string buffer_;
};

// Builds "builtin:toy_suffix", "builtin:constant" or a subprocess session.
std::unique_ptr<LabellerSession> MakeLabeller(const std::string& command);

// Feeds prefixes 1..N of `ias` (joined with single spaces) to `session`,
// one request per interest area, and returns one trace per task in
// canonical order. Session failures are rethrown as kTransport with the
// text id and timestep; a label sequence shorter than the previous step's
// raises kAlignment unless `allow_shrink`.
std::vector<IncrementalTrace> ReplayIncremental(
    std::string_view text_id, std::span<const std::string> ias,
    LabellerSession& session, std::span<const Task> tasks,
    bool allow_shrink = false);

}  // namespace gazerev::harness

#endif  // GAZEREV_HARNESS_LABELLER_H_
