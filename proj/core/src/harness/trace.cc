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

#include "gazerev/harness/trace.h"

#include <algorithm>
#include <map>
#include <set>

#include "gazerev/csv.h"
#include "gazerev/error.h"
#include "json.hpp"

namespace gazerev::harness {

using Json = nlohmann::ordered_json;

std::string_view TaskName(Task task) {
  switch (task) {
    case Task::kPos: return "pos";
    case Task::kHead: return "head";
    case Task::kDeprel: return "deprel";
  }
  return "?";
}

std::optional<Task> ParseTask(std::string_view name) {
  for (Task task : kAllTasks) {
    if (TaskName(task) == name) return task;
  }
  return std::nullopt;
}

std::vector<Task> ParseTaskList(std::string_view list) {
  std::vector<Task> tasks;
  std::size_t start = 0;
  while (start <= list.size()) {
    std::size_t end = list.find(',', start);
    if (end == std::string_view::npos) end = list.size();
    std::string_view item = list.substr(start, end - start);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (!item.empty()) {
      auto task = ParseTask(item);
      if (!task) {
        throw Error(ErrorKind::kUsage, "unknown task '" + std::string(item) +
                                           "' (expected pos, head, deprel)");
      }
      if (std::find(tasks.begin(), tasks.end(), *task) == tasks.end()) {
        tasks.push_back(*task);
      }
    }
    start = end + 1;
  }
  std::sort(tasks.begin(), tasks.end());
  return tasks;
}

std::string FormatTrace(std::span<const IncrementalTrace> traces) {
  // Group by text, keeping first-appearance order.
  std::vector<std::string> text_order;
  std::map<std::string, std::vector<const IncrementalTrace*>> by_text;
  for (const IncrementalTrace& trace : traces) {
    auto [it, inserted] = by_text.try_emplace(trace.text_id);
    if (inserted) text_order.push_back(trace.text_id);
    it->second.push_back(&trace);
  }
  std::string out;
  for (const std::string& text : text_order) {
    auto& group = by_text[text];
    std::sort(group.begin(), group.end(),
              [](const IncrementalTrace* a, const IncrementalTrace* b) {
                return a->task < b->task;
              });
    const std::size_t n = group.front()->size();
    for (const IncrementalTrace* trace : group) {
      if (trace->size() != n) {
        throw Error(ErrorKind::kIntegrity,
                    "traces of text '" + text + "' differ in length");
      }
    }
    for (std::size_t t = 0; t < n; ++t) {
      Json record;
      record["text_id"] = text;
      record["t"] = t + 1;
      Json tasks = Json::object();
      for (const IncrementalTrace* trace : group) {
        tasks[std::string(TaskName(trace->task))] = trace->steps[t];
      }
      record["tasks"] = std::move(tasks);
      out += record.dump();
      out.push_back('\n');
    }
  }
  return out;
}

void SaveTrace(std::span<const IncrementalTrace> traces,
               const std::filesystem::path& path) {
  WriteFile(path, FormatTrace(traces));
}

std::vector<IncrementalTrace> ParseTrace(std::string_view contents,
                                         std::string_view source_name) {
  std::vector<IncrementalTrace> out;
  std::set<std::string> finished_texts;
  bool have_current = false;
  std::string current_text;
  std::size_t current_begin = 0;  // index into `out` of current text's traces
  std::vector<Task> current_tasks;
  std::size_t expected_t = 1;

  auto fail = [&](std::size_t line, const std::string& what) -> Error {
    return Error(ErrorKind::kParse, std::string(source_name) + ":" +
                                        std::to_string(line) + ": " + what);
  };

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < contents.size()) {
    std::size_t end = contents.find('\n', pos);
    if (end == std::string_view::npos) end = contents.size();
    std::string_view line = contents.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;

    Json record;
    try {
      record = Json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw fail(line_no, std::string("malformed JSON: ") + e.what());
    }
    if (!record.is_object() || !record.contains("text_id") ||
        !record["text_id"].is_string() || !record.contains("t") ||
        !record["t"].is_number_integer() || !record.contains("tasks") ||
        !record["tasks"].is_object()) {
      throw fail(line_no, "record needs string text_id, integer t, object tasks");
    }
    const std::string text = record["text_id"].get<std::string>();
    const long t = record["t"].get<long>();

    std::vector<Task> tasks;
    std::vector<LabelSequence> labels;
    for (auto it = record["tasks"].begin(); it != record["tasks"].end(); ++it) {
      auto task = ParseTask(it.key());
      if (!task) throw fail(line_no, "unknown task '" + it.key() + "'");
      if (!it.value().is_array()) {
        throw fail(line_no, "labels for '" + it.key() + "' are not an array");
      }
      LabelSequence seq;
      for (const auto& label : it.value()) {
        if (!label.is_string()) {
          throw fail(line_no, "label for '" + it.key() + "' is not a string");
        }
        seq.push_back(label.get<std::string>());
      }
      tasks.push_back(*task);
      labels.push_back(std::move(seq));
    }
    if (tasks.empty()) throw fail(line_no, "record has no tasks");
    // Canonical order.
    std::vector<std::size_t> order(tasks.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return tasks[a] < tasks[b]; });

    if (!have_current || text != current_text) {
      if (have_current) finished_texts.insert(current_text);
      if (finished_texts.contains(text)) {
        throw fail(line_no, "text '" + text + "' appears in two separate runs");
      }
      if (t != 1) {
        throw fail(line_no, "text '" + text + "' starts at t=" +
                                std::to_string(t) + " instead of t=1");
      }
      have_current = true;
      current_text = text;
      current_begin = out.size();
      current_tasks.clear();
      for (std::size_t i : order) {
        current_tasks.push_back(tasks[i]);
        out.push_back(IncrementalTrace{text, tasks[i], {}});
      }
      expected_t = 1;
    }
    if (t != static_cast<long>(expected_t)) {
      throw fail(line_no, "out-of-order timestep for text '" + text +
                              "': expected t=" + std::to_string(expected_t) +
                              ", found t=" + std::to_string(t));
    }
    std::vector<Task> sorted_tasks;
    for (std::size_t i : order) sorted_tasks.push_back(tasks[i]);
    if (sorted_tasks != current_tasks) {
      throw fail(line_no, "task set changed within text '" + text + "'");
    }
    for (std::size_t k = 0; k < order.size(); ++k) {
      out[current_begin + k].steps.push_back(std::move(labels[order[k]]));
    }
    ++expected_t;
  }
  return out;
}

std::vector<IncrementalTrace> LoadTrace(const std::filesystem::path& path) {
  return ParseTrace(ReadFile(path), path.string());
}

}  // namespace gazerev::harness
