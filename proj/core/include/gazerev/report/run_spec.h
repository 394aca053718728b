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

// Run configuration: a flat "key = value" file, '#' starts a comment line.
//
//   tasks = pos,head,deprel            responses = revised,effective
//   seed = 7                           n_perm = 10000
//   drop_nonsig_position = false       theta_degeneracy = 0.001
//   quadrature_nodes = 20              prediction_mode = conditional
//   grid_points = 50                   shrink_policy = strict
//
//   dataset.<id>.path = reading.tsv
//   dataset.<id>.col.<field> = <column>   field: text_id ia_index ia_text
//                                         subject_id regression skip label
//   labeller.<id>.command = builtin:toy_suffix | <shell command>
//   labeller.<id>.trace = traces/{dataset}.jsonl
//
// Relative paths resolve against the directory holding the config file.
// A labeller has exactly one of `command` and `trace`.

#ifndef GAZEREV_REPORT_RUN_SPEC_H_
#define GAZEREV_REPORT_RUN_SPEC_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "gazerev/glmm/design.h"
#include "gazerev/glmm/inference.h"
#include "gazerev/harness/revisions.h"
#include "gazerev/harness/trace.h"
#include "gazerev/reading/reading_table.h"

namespace gazerev::report {

struct DatasetSpec {
  std::string id;
  std::filesystem::path path;
  reading::ColumnMapping mapping;
};

struct LabellerSpec {
  std::string id;
  std::string command;  // live session
  std::string trace;    // recorded trace path pattern, may hold {dataset}

  bool recorded() const { return !trace.empty(); }
  // Trace path for a dataset, relative paths resolved against base_dir.
  std::filesystem::path TracePath(std::string_view dataset_id,
                                  const std::filesystem::path& base_dir) const;
};

struct RunSpec {
  std::vector<harness::Task> tasks{std::begin(harness::kAllTasks),
                                   std::end(harness::kAllTasks)};
  std::vector<glmm::Response> responses{glmm::Response::kRevised,
                                        glmm::Response::kEffective};
  std::uint64_t seed = 0;
  int n_perm = 10000;
  bool drop_nonsig_position = false;
  double theta_degeneracy = 1e-3;
  int quadrature_nodes = 20;
  glmm::PredictionMode prediction_mode = glmm::PredictionMode::kConditional;
  int grid_points = 50;
  harness::ShrinkPolicy shrink_policy = harness::ShrinkPolicy::kStrict;

  std::vector<DatasetSpec> datasets;    // sorted by id
  std::vector<LabellerSpec> labellers;  // sorted by id
  std::filesystem::path base_dir;
  std::uint64_t config_hash = 0;  // FNV-1a 64 of the raw config text
};

// Throws kUsage naming the line for unknown keys, bad values, missing
// dataset paths or labellers without exactly one source.
RunSpec ParseRunSpec(std::string_view text, const std::filesystem::path& base_dir,
                     std::string_view source_name = "<memory>");
RunSpec LoadRunSpec(const std::filesystem::path& path);

std::uint64_t Fnv1a64(std::string_view bytes);

std::string_view PredictionModeName(glmm::PredictionMode mode);

}  // namespace gazerev::report

#endif  // GAZEREV_REPORT_RUN_SPEC_H_
