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

#ifndef GAZEREV_REPORT_PIPELINE_H_
#define GAZEREV_REPORT_PIPELINE_H_

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "gazerev/harness/labeller.h"
#include "gazerev/reading/reading_table.h"
#include "gazerev/report/bundle.h"
#include "gazerev/report/run_spec.h"

namespace gazerev::report {

// Interest areas of each text in IA order, texts sorted by id.
std::vector<std::pair<std::string, std::vector<std::string>>> TextsOf(
    const reading::ReadingTable& table);

// Replays every text of `table` through `session`.
std::vector<harness::IncrementalTrace> RecordTraces(const reading::ReadingTable& table,
                                                    harness::LabellerSession& session,
                                                    std::span<const harness::Task> tasks);

// Writes <out>/<dataset>.reading.tsv (normalized) for every dataset.
std::vector<std::filesystem::path> Ingest(const RunSpec& spec,
                                          const std::filesystem::path& out_dir);

// Writes <out>/<dataset>.<labeller>.jsonl for every command labeller.
std::vector<std::filesystem::path> Record(const RunSpec& spec,
                                          const std::filesystem::path& out_dir);

// Full analysis in memory. Fails on the first cell error, naming the cell.
Bundle Analyze(const RunSpec& spec);

}  // namespace gazerev::report

#endif  // GAZEREV_REPORT_PIPELINE_H_
