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

#include "gazerev/report/pipeline.h"

#include <Eigen/Core>
#include <fmt/format.h>

#include <algorithm>
#include <map>
#include <memory>
#include <system_error>

#include "gazerev/error.h"
#include "gazerev/eval/comparison.h"
#include "gazerev/eval/discrimination.h"
#include "gazerev/eval/frame.h"
#include "gazerev/eval/prediction_grid.h"
#include "gazerev/glmm/fit_io.h"
#include "gazerev/harness/revisions.h"
#include "gazerev/reading/signals.h"

namespace gazerev::report {
namespace {

using glmm::FormatReal;

std::string Int(long long v) { return std::to_string(v); }
std::string Bool(bool v) { return v ? "true" : "false"; }

void EnsureDirectory(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw Error(ErrorKind::kIo,
                "cannot create directory '" + dir.string() + "': " + ec.message());
  }
}

std::string JoinTasks(std::span<const harness::Task> tasks) {
  std::string out;
  for (harness::Task t : tasks) {
    if (!out.empty()) out.push_back(',');
    out += harness::TaskName(t);
  }
  return out;
}

std::string FormatManifest(const RunSpec& spec) {
  std::string out;
  auto put = [&out](std::string_view key, const std::string& value) {
    out += fmt::format("{} = {}\n", key, value);
  };
  put("format", "gazerev-bundle/1");
  put("gazerev_version", GAZEREV_VERSION);
  put("eigen_version", fmt::format("{}.{}.{}", EIGEN_WORLD_VERSION, EIGEN_MAJOR_VERSION,
                                   EIGEN_MINOR_VERSION));
  put("config_hash", fmt::format("fnv1a64:{:016x}", spec.config_hash));
  put("seed", std::to_string(spec.seed));
  put("n_perm", Int(spec.n_perm));
  put("tasks", JoinTasks(spec.tasks));
  std::string responses;
  for (glmm::Response r : spec.responses) {
    responses += (responses.empty() ? "" : ",") + std::string(glmm::ResponseName(r));
  }
  put("responses", responses);
  put("drop_nonsig_position", Bool(spec.drop_nonsig_position));
  put("theta_degeneracy", FormatReal(spec.theta_degeneracy));
  put("quadrature_nodes", Int(spec.quadrature_nodes));
  put("prediction_mode", std::string(PredictionModeName(spec.prediction_mode)));
  put("grid_points", Int(spec.grid_points));
  put("shrink_policy",
      spec.shrink_policy == harness::ShrinkPolicy::kStrict ? "strict" : "lenient");
  for (const DatasetSpec& d : spec.datasets) put("dataset", d.id);
  for (const LabellerSpec& l : spec.labellers) {
    put("labeller", l.id + (l.recorded() ? ",trace," + l.trace : ",command," + l.command));
  }
  return out;
}

// Traces restricted to the requested tasks; every task must be present.
std::vector<harness::IncrementalTrace> SelectTasks(
    std::vector<harness::IncrementalTrace> traces, std::span<const harness::Task> tasks,
    const std::string& source) {
  std::vector<harness::IncrementalTrace> out;
  for (harness::Task task : tasks) {
    bool found = false;
    for (auto& trace : traces) {
      if (trace.task == task) {
        out.push_back(std::move(trace));
        found = true;
      }
    }
    if (!found) {
      throw Error(ErrorKind::kSchema, source + ": no trace for task '" +
                                          std::string(harness::TaskName(task)) + "'");
    }
  }
  return out;
}

void AddWarnings(Bundle& bundle, const std::string& scope,
                 const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) bundle.AddRow(kWarningsFile, {scope, w});
}

void AddCoefficients(Bundle& bundle, const std::vector<std::string>& cell,
                     std::string_view model, const std::vector<glmm::WaldRow>& rows) {
  for (const glmm::WaldRow& w : rows) {
    std::vector<std::string> row = cell;
    row.insert(row.end(), {std::string(model), w.term, FormatReal(w.estimate),
                           FormatReal(w.se), FormatReal(w.z), FormatReal(w.p)});
    bundle.AddRow(kCoefficientsFile, std::move(row));
  }
}

void AnalyzeCell(const RunSpec& spec, const eval::AnalysisFrame& frame,
                 const std::string& dataset_id, const std::string& labeller_id,
                 harness::Task task, glmm::Response response, Bundle& bundle) {
  const std::string task_name(harness::TaskName(task));
  const std::string response_name(glmm::ResponseName(response));
  const std::vector<std::string> cell = {dataset_id, labeller_id, task_name, response_name};
  const std::string scope = dataset_id + "/" + labeller_id + "/" + task_name + "/" +
                            response_name;

  eval::ComparisonOptions options;
  options.drop_nonsig_position = spec.drop_nonsig_position;
  options.fit.quadrature_nodes = spec.quadrature_nodes;
  options.fit.theta_degeneracy = spec.theta_degeneracy;
  const eval::ComparisonResult result = eval::RunComparison(frame, response, options);
  AddWarnings(bundle, scope, result.warnings);
  AddCoefficients(bundle, cell, "null", result.null_wald);
  AddCoefficients(bundle, cell, "full", result.full_wald);

  const eval::LrtResult& lrt = result.lrt;
  std::vector<std::string> lrt_row = cell;
  lrt_row.insert(lrt_row.end(),
                 {FormatReal(lrt.loglik_null), FormatReal(lrt.loglik_full),
                  FormatReal(lrt.bic_null), FormatReal(lrt.bic_full), FormatReal(lrt.chi2),
                  Int(lrt.df), FormatReal(lrt.p), Bool(result.position_dropped),
                  FormatReal(result.null_fit.theta), FormatReal(result.full_fit.theta),
                  Bool(result.null_fit.fallback_glm), Bool(result.full_fit.fallback_glm)});
  bundle.AddRow(kLrtFile, std::move(lrt_row));

  try {
    const Eigen::VectorXd scores =
        glmm::Predict(result.full_fit, result.full_design, spec.prediction_mode);
    std::vector<int> labels(static_cast<std::size_t>(result.full_design.rows()));
    long positives = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      labels[i] = result.full_design.y[static_cast<Eigen::Index>(i)] > 0.5 ? 1 : 0;
      positives += labels[i];
    }
    const std::span<const double> score_span(scores.data(),
                                             static_cast<std::size_t>(scores.size()));
    // Each cell draws from its own stream so adding cells never shifts others.
    const std::uint64_t cell_seed =
        eval::SplitMix64(spec.seed ^ Fnv1a64(scope));
    const eval::PermutationResult perm =
        eval::PermutationTest(score_span, labels, spec.n_perm, cell_seed);
    const double auc = eval::Auc(score_span, labels);
    std::vector<std::string> pred_row = cell;
    pred_row.insert(pred_row.end(),
                    {std::string(PredictionModeName(spec.prediction_mode)),
                     Int(static_cast<long long>(labels.size())), Int(positives),
                     FormatReal(perm.observed), FormatReal(perm.p_value),
                     Int(perm.n_permutations), std::to_string(perm.seed), FormatReal(auc)});
    bundle.AddRow(kPredictionsFile, std::move(pred_row));

    for (const char* predictor : {"p_reg", "p_skip"}) {
      for (const eval::GridPoint& g :
           eval::PredictionGrid(result.full_fit, frame, predictor, spec.grid_points)) {
        std::vector<std::string> row = cell;
        row.insert(row.end(), {predictor, FormatReal(g.x), FormatReal(g.p_hat),
                               FormatReal(g.lo95), FormatReal(g.hi95)});
        bundle.AddRow(kGridFile, std::move(row));
      }
    }
  } catch (const Error& e) {
    throw e.WithContext(scope);
  }

  const std::string stem = "fits/" + dataset_id + "." + labeller_id + "." + task_name +
                           "." + response_name;
  bundle.extra_files[stem + ".null.fit"] =
      glmm::FormatFitArtifact({result.null_formula.ToString(), result.null_fit});
  bundle.extra_files[stem + ".full.fit"] =
      glmm::FormatFitArtifact({result.full_formula.ToString(), result.full_fit});
}

}  // namespace

std::vector<std::pair<std::string, std::vector<std::string>>> TextsOf(
    const reading::ReadingTable& table) {
  std::map<std::string, std::map<int, std::string>> by_text;
  for (const reading::ReadingRow& row : table.rows) {
    by_text[row.text_id].emplace(row.ia_index, row.ia_text);
  }
  std::vector<std::pair<std::string, std::vector<std::string>>> out;
  for (auto& [text, ias] : by_text) {
    std::vector<std::string> list;
    list.reserve(ias.size());
    for (auto& [index, ia] : ias) list.push_back(std::move(ia));
    out.emplace_back(text, std::move(list));
  }
  return out;
}

std::vector<harness::IncrementalTrace> RecordTraces(const reading::ReadingTable& table,
                                                    harness::LabellerSession& session,
                                                    std::span<const harness::Task> tasks) {
  std::vector<harness::IncrementalTrace> out;
  for (const auto& [text, ias] : TextsOf(table)) {
    auto traces = harness::ReplayIncremental(text, ias, session, tasks,
                                             /*allow_shrink=*/true);
    for (auto& t : traces) out.push_back(std::move(t));
  }
  return out;
}

std::vector<std::filesystem::path> Ingest(const RunSpec& spec,
                                          const std::filesystem::path& out_dir) {
  EnsureDirectory(out_dir);
  std::vector<std::filesystem::path> written;
  for (const DatasetSpec& d : spec.datasets) {
    const reading::ReadingTable table = reading::LoadReadingTable(d.path, d.mapping);
    const std::filesystem::path path = out_dir / (d.id + ".reading.tsv");
    reading::WriteNormalizedReadingTable(table, path);
    written.push_back(path);
  }
  return written;
}

std::vector<std::filesystem::path> Record(const RunSpec& spec,
                                          const std::filesystem::path& out_dir) {
  EnsureDirectory(out_dir);
  std::vector<std::filesystem::path> written;
  for (const DatasetSpec& d : spec.datasets) {
    const reading::ReadingTable table = reading::LoadReadingTable(d.path, d.mapping);
    for (const LabellerSpec& l : spec.labellers) {
      if (l.recorded()) continue;
      auto session = harness::MakeLabeller(l.command);
      const auto traces = RecordTraces(table, *session, spec.tasks);
      const std::filesystem::path path = out_dir / (d.id + "." + l.id + ".jsonl");
      harness::SaveTrace(traces, path);
      written.push_back(path);
    }
  }
  return written;
}

Bundle Analyze(const RunSpec& spec) {
  if (spec.datasets.empty()) throw Error(ErrorKind::kUsage, "config defines no dataset");
  if (spec.labellers.empty()) throw Error(ErrorKind::kUsage, "config defines no labeller");
  Bundle bundle = Bundle::Empty();
  bundle.manifest = FormatManifest(spec);
  const harness::ShrinkPolicy policy = spec.shrink_policy;

  for (const DatasetSpec& d : spec.datasets) {
    const reading::ReadingTable table = reading::LoadReadingTable(d.path, d.mapping);
    const reading::TokenSignalTable signals = reading::EstimateTokenProbabilities(table);
    AddWarnings(bundle, d.id, signals.warnings);

    try {
      const reading::CorrelationReport corr = reading::CorrelateSignals(signals);
      bundle.AddRow(kCorrelationFile, {d.id, Int(static_cast<long long>(corr.n)),
                                       FormatReal(corr.pearson),
                                       FormatReal(corr.spearman)});
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kUndefined && e.kind() != ErrorKind::kEmptyInput) throw;
      bundle.AddRow(kCorrelationFile,
                    {d.id, Int(static_cast<long long>(signals.rows.size())), "nan", "nan"});
      AddWarnings(bundle, d.id, {std::string("correlation: ") + e.what()});
    }
    const reading::DistributionSummary dist = reading::SummarizeDistributions(table);
    for (const reading::TokenSignal& s : dist.tokens) {
      bundle.AddRow(kTokenDistributionFile,
                    {d.id, s.text_id, Int(s.ia_index), s.ia_text, FormatReal(s.p_reg),
                     FormatReal(s.p_skip), Int(s.n_valid), Int(s.n_regressed),
                     Int(s.n_skipped)});
    }
    for (const reading::SubjectProportion& s : dist.subjects) {
      bundle.AddRow(kSubjectDistributionFile, {d.id, s.subject_id, FormatReal(s.p_reg),
                                               FormatReal(s.p_skip), Int(s.n_valid)});
    }

    for (const LabellerSpec& l : spec.labellers) {
      std::vector<harness::IncrementalTrace> traces;
      if (l.recorded()) {
        const std::filesystem::path path = l.TracePath(d.id, spec.base_dir);
        traces = SelectTasks(harness::LoadTrace(path), spec.tasks, path.string());
      } else {
        auto session = harness::MakeLabeller(l.command);
        traces = RecordTraces(table, *session, spec.tasks);
        bundle.extra_files["traces/" + d.id + "." + l.id + ".jsonl"] =
            harness::FormatTrace(traces);
      }
      std::vector<harness::RevisionSeries> series;
      series.reserve(traces.size());
      for (const auto& trace : traces) series.push_back(harness::DetectRevisions(trace, policy));

      for (const harness::RevisionStats& s : harness::ComputeRevisionStats(series, l.id)) {
        bundle.AddRow(kRevisionStatsFile,
                      {d.id, l.id, std::string(harness::TaskName(s.task)), Int(s.timesteps),
                       Int(s.revised), Int(s.effective), FormatReal(s.all_r),
                       FormatReal(s.eff_r)});
      }
      const eval::AssembledFrame assembled = eval::AssembleFrame(signals, series, l.id);
      for (const eval::JoinReport& j : assembled.reports) {
        std::string missing;
        for (const auto& t : j.texts_without_series) {
          missing += (missing.empty() ? "" : ";") + t;
        }
        bundle.AddRow(kJoinReportFile,
                      {d.id, l.id, std::string(harness::TaskName(j.task)), Int(j.joined),
                       Int(j.dropped_without_signal), Int(j.dropped_without_series),
                       missing});
      }
      for (harness::Task task : spec.tasks) {
        const eval::AnalysisFrame cell = assembled.frame.Select(l.id, task);
        for (glmm::Response response : spec.responses) {
          AnalyzeCell(spec, cell, d.id, l.id, task, response, bundle);
        }
      }
    }
  }
  return bundle;
}

}  // namespace gazerev::report
