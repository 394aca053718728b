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

#include "gazerev/report/synthetic.h"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "gazerev/csv.h"
#include "gazerev/error.h"
#include "gazerev/glmm/distributions.h"
#include "gazerev/glmm/fit_io.h"
#include "gazerev/harness/labeller.h"
#include "gazerev/harness/revisions.h"
#include "gazerev/report/pipeline.h"
#include "gazerev/report/render.h"
#include "gazerev/report/run_spec.h"

namespace gazerev::report {
namespace {

using reading::ReadingLabel;

// Portable draws on top of mt19937_64, whose output sequence is fixed by
// the standard (the std distributions are not).
class Draws {
 public:
  explicit Draws(std::uint64_t seed) : rng_(seed) {}

  double Uniform() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

  double Normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = Uniform();
    while (u1 <= 0.0) u1 = Uniform();
    const double u2 = Uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * std::numbers::pi * u2);
    have_spare_ = true;
    return r * std::cos(2.0 * std::numbers::pi * u2);
  }

  bool Bernoulli(double p) { return Uniform() < p; }

 private:
  std::mt19937_64 rng_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

SelfCheckItem Check(std::string name, bool passed, std::string detail) {
  return {std::move(name), passed, std::move(detail)};
}

}  // namespace

reading::ReadingTable ToyReadingTable() {
  reading::ReadingTable table;
  table.dataset_id = "toy";
  const std::vector<std::string> ias = {"The", "aurora", "was", "bright"};
  const ReadingLabel labels[2][4] = {
      {ReadingLabel::kNotRegressed, ReadingLabel::kRegressed, ReadingLabel::kSkipped,
       ReadingLabel::kNotRegressed},
      {ReadingLabel::kSkipped, ReadingLabel::kNotRegressed, ReadingLabel::kRegressed,
       ReadingLabel::kNotRegressed}};
  for (int s = 0; s < 2; ++s) {
    for (int i = 0; i < 4; ++i) {
      table.rows.push_back({"toy", i + 1, ias[i], "s" + std::to_string(s + 1), labels[s][i]});
    }
  }
  return table;
}

harness::IncrementalTrace EachOneTrace() {
  harness::IncrementalTrace trace;
  trace.text_id = "each-one";
  trace.task = harness::Task::kPos;
  trace.steps = {
      {"DET"},
      {"DET", "NUM"},
      {"PRON", "NUM", "ADP"},
      {"PRON", "NUM", "ADP", "PRON"},
      {"PRON", "PRON", "ADP", "PRON", "ADP"},
      {"PRON", "PRON", "ADP", "PRON", "ADP", "ADV"},
  };
  return trace;
}

SyntheticStudy MakeSyntheticStudy(const SyntheticOptions& o) {
  if (o.texts < 1 || o.ias_per_text < 2 || o.subjects < 1) {
    throw Error(ErrorKind::kDomain, "synthetic study needs texts, >= 2 IAs and subjects");
  }
  Draws draws(o.seed);
  SyntheticStudy study;
  study.reading.dataset_id = "synthetic";

  struct Token {
    int regressed = 0, skipped = 0, valid = 0;
  };
  std::vector<std::vector<Token>> tokens(o.texts, std::vector<Token>(o.ias_per_text));
  for (int t = 0; t < o.texts; ++t) {
    const std::string text_id = fmt::format("t{:02d}", t + 1);
    for (int j = 0; j < o.ias_per_text; ++j) {
      // Short, predictable words get skipped and rarely regressed from.
      const double ease = draws.Normal();
      const double p_skip = glmm::InverseLogit(-1.0 + 1.2 * ease);
      const double p_reg_given_fixated =
          glmm::InverseLogit(-1.2 - 0.8 * ease + 0.8 * draws.Normal());
      const std::string ia = fmt::format("w{}_{}", t + 1, j + 1);
      for (int s = 0; s < o.subjects; ++s) {
        ReadingLabel label;
        if (draws.Bernoulli(o.missing_rate)) {
          label = ReadingLabel::kMissing;
        } else if (draws.Bernoulli(p_skip)) {
          label = ReadingLabel::kSkipped;
        } else if (draws.Bernoulli(p_reg_given_fixated)) {
          label = ReadingLabel::kRegressed;
        } else {
          label = ReadingLabel::kNotRegressed;
        }
        Token& tok = tokens[t][j];
        if (label != ReadingLabel::kMissing) ++tok.valid;
        if (label == ReadingLabel::kSkipped) ++tok.skipped;
        if (label == ReadingLabel::kRegressed) ++tok.regressed;
        study.reading.rows.push_back(
            {text_id, j + 1, ia, fmt::format("s{:02d}", s + 1), label});
      }
    }
  }

  // z-scored position over all texts (positions are 1..N in every text).
  const double n = o.ias_per_text;
  const double mean_pos = (n + 1.0) / 2.0;
  const double rows = n * o.texts;
  const double sd_pos = std::sqrt((n * n - 1.0) / 12.0 * rows / (rows - 1.0));
  for (int t = 0; t < o.texts; ++t) {
    const double u = o.theta * draws.Normal();
    std::vector<bool> revised(o.ias_per_text, false);
    for (int j = 1; j < o.ias_per_text; ++j) {
      const Token& tok = tokens[t][j];
      const double p_reg = tok.valid ? static_cast<double>(tok.regressed) / tok.valid : 0.0;
      const double p_skip = tok.valid ? static_cast<double>(tok.skipped) / tok.valid : 0.0;
      const double z = (j + 1 - mean_pos) / sd_pos;
      const double eta =
          o.intercept + o.b_position * z + o.b_reg * p_reg + o.b_skip * p_skip + u;
      revised[j] = draws.Bernoulli(glmm::InverseLogit(eta));
      study.revisions += revised[j];
    }
    harness::IncrementalTrace trace;
    trace.text_id = fmt::format("t{:02d}", t + 1);
    trace.task = harness::Task::kPos;
    harness::LabelSequence current;
    for (int j = 0; j < o.ias_per_text; ++j) {
      if (revised[j]) current[j - 1] = "F";
      current.push_back("T");
      trace.steps.push_back(current);
    }
    study.traces.push_back(std::move(trace));
  }
  return study;
}

std::filesystem::path WriteSyntheticFixture(const SyntheticStudy& study,
                                            const std::filesystem::path& dir,
                                            std::uint64_t seed, int n_perm) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw Error(ErrorKind::kIo,
                "cannot create directory '" + dir.string() + "': " + ec.message());
  }
  reading::WriteNormalizedReadingTable(study.reading, dir / "reading.tsv");
  harness::SaveTrace(study.traces, dir / "trace.jsonl");
  const std::string config = fmt::format(
      "# synthetic study: revisions drawn from a known model of p_reg and p_skip\n"
      "tasks = pos\n"
      "responses = revised,effective\n"
      "seed = {}\n"
      "n_perm = {}\n"
      "dataset.synthetic.path = reading.tsv\n"
      "dataset.synthetic.col.label = label\n"
      "labeller.simulated.trace = trace.jsonl\n",
      seed, n_perm);
  const std::filesystem::path path = dir / "run.cfg";
  WriteFile(path, config);
  return path;
}

bool SelfCheckReport::passed() const {
  return std::all_of(items.begin(), items.end(),
                     [](const SelfCheckItem& i) { return i.passed; });
}

SelfCheckReport RunSelfCheck(const std::filesystem::path& work_dir, std::uint64_t seed) {
  SelfCheckReport report;

  {
    const reading::ReadingTable toy = ToyReadingTable();
    harness::ToySuffixLabeller labeller;
    const harness::Task tasks[] = {harness::Task::kPos};
    const auto traces = RecordTraces(toy, labeller, tasks);
    std::vector<harness::RevisionSeries> series;
    for (const auto& t : traces) series.push_back(harness::DetectRevisions(t));
    const auto stats = harness::ComputeRevisionStats(series, "toy");
    const std::string all = FormatFixed(stats.at(0).all_r);
    const std::string eff = FormatFixed(stats.at(0).eff_r);
    report.items.push_back(Check("toy labeller revision stats",
                                 all == "75.00" && eff == "75.00",
                                 "all-r " + all + ", eff-r " + eff));
  }

  const SyntheticStudy study = MakeSyntheticStudy();
  const std::filesystem::path config = WriteSyntheticFixture(study, work_dir, seed);
  const RunSpec spec = LoadRunSpec(config);
  report.bundle_dir = work_dir / "bundle";
  WriteBundle(Analyze(spec), report.bundle_dir);
  report.bundle = LoadBundle(report.bundle_dir);
  const auto rendered = RenderAll(report.bundle);
  report.items.push_back(Check("bundle renders", rendered.size() == 8,
                               std::to_string(rendered.size()) + " files"));

  bool converged = true;
  std::string fits;
  for (const std::string response : {"revised", "effective"}) {
    const std::filesystem::path fit_path =
        report.bundle_dir / "fits" / ("synthetic.simulated.pos." + response + ".full.fit");
    const glmm::FitArtifact artifact = glmm::LoadFitArtifact(fit_path);
    converged = converged && artifact.fit.converged;
    fits += (fits.empty() ? "" : ", ") + response + (artifact.fit.converged ? " ok" : " failed");
  }
  report.items.push_back(Check("full model converges", converged, fits));

  const DelimitedTable& predictions = report.bundle.Section(kPredictionsFile);
  const std::size_t auc_col = *predictions.Column("auc");
  bool auc_defined = !predictions.rows.empty();
  std::string aucs;
  for (const auto& row : predictions.rows) {
    const double auc = glmm::ParseReal(row[auc_col]);
    auc_defined = auc_defined && std::isfinite(auc) && auc >= 0.0 && auc <= 1.0;
    aucs += (aucs.empty() ? "" : ", ") + FormatFixed(auc);
  }
  report.items.push_back(Check("AUC defined", auc_defined, "AUC " + aucs));

  const DelimitedTable& lrt = report.bundle.Section(kLrtFile);
  const std::size_t p_col = *lrt.Column("p");
  std::string ps;
  for (const auto& row : lrt.rows) {
    ps += (ps.empty() ? "" : ", ") + FormatPValue(glmm::ParseReal(row[p_col]));
  }
  report.items.push_back(Check("likelihood-ratio test computed", !lrt.rows.empty(),
                               "p " + ps));
  return report;
}

}  // namespace gazerev::report
