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

#include "gazerev/report/run_spec.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <optional>

#include "gazerev/csv.h"
#include "gazerev/error.h"

namespace gazerev::report {
namespace {

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

bool ValidId(std::string_view id) {
  return !id.empty() && std::all_of(id.begin(), id.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
  });
}

class LineError {
 public:
  LineError(std::string_view source, std::size_t line) : source_(source), line_(line) {}
  Error operator()(const std::string& what) const {
    return Error(ErrorKind::kUsage,
                 source_ + ":" + std::to_string(line_) + ": " + what);
  }

 private:
  std::string source_;
  std::size_t line_;
};

template <typename T>
T ParseNumber(std::string_view value, const LineError& fail, const std::string& key) {
  T out{};
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw fail("'" + key + "' expects a number, got '" + std::string(value) + "'");
  }
  return out;
}

bool ParseBool(std::string_view value, const LineError& fail, const std::string& key) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw fail("'" + key + "' expects true or false, got '" + std::string(value) + "'");
}

std::filesystem::path Resolve(const std::filesystem::path& base, std::string_view value) {
  std::filesystem::path p{std::string(value)};
  return p.is_absolute() ? p : base / p;
}

}  // namespace

std::uint64_t Fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string_view PredictionModeName(glmm::PredictionMode mode) {
  return mode == glmm::PredictionMode::kConditional ? "conditional" : "population";
}

std::filesystem::path LabellerSpec::TracePath(std::string_view dataset_id,
                                              const std::filesystem::path& base_dir) const {
  std::string pattern = trace;
  const std::string placeholder = "{dataset}";
  for (std::size_t at = pattern.find(placeholder); at != std::string::npos;
       at = pattern.find(placeholder, at + dataset_id.size())) {
    pattern.replace(at, placeholder.size(), dataset_id);
  }
  return Resolve(base_dir, pattern);
}

RunSpec ParseRunSpec(std::string_view text, const std::filesystem::path& base_dir,
                     std::string_view source_name) {
  RunSpec spec;
  spec.base_dir = base_dir;
  spec.config_hash = Fnv1a64(text);
  std::map<std::string, DatasetSpec> datasets;
  std::map<std::string, LabellerSpec> labellers;
  std::map<std::string, std::size_t> lines_of;

  std::size_t pos = 0, line_no = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = Trim(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const LineError fail(source_name, line_no);
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) throw fail("expected 'key = value'");
    const std::string key(Trim(line.substr(0, eq)));
    const std::string_view value = Trim(line.substr(eq + 1));
    if (lines_of.count(key)) {
      throw fail("key '" + key + "' already set on line " +
                 std::to_string(lines_of[key]));
    }
    lines_of[key] = line_no;

    if (key == "tasks") {
      try {
        spec.tasks = harness::ParseTaskList(value);
      } catch (const Error& e) {
        throw fail(e.what());
      }
      if (spec.tasks.empty()) throw fail("'tasks' must name at least one task");
    } else if (key == "responses") {
      spec.responses.clear();
      std::string_view rest = value;
      while (!rest.empty()) {
        const std::size_t comma = rest.find(',');
        const std::string_view name = Trim(rest.substr(0, comma));
        const auto r = glmm::ParseResponse(name);
        if (!r) throw fail("unknown response '" + std::string(name) + "'");
        if (std::find(spec.responses.begin(), spec.responses.end(), *r) ==
            spec.responses.end()) {
          spec.responses.push_back(*r);
        }
        rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
      }
      if (spec.responses.empty()) throw fail("'responses' must name at least one response");
      std::sort(spec.responses.begin(), spec.responses.end());
    } else if (key == "seed") {
      spec.seed = ParseNumber<std::uint64_t>(value, fail, key);
    } else if (key == "n_perm") {
      spec.n_perm = ParseNumber<int>(value, fail, key);
      if (spec.n_perm < 1) throw fail("'n_perm' must be positive");
    } else if (key == "drop_nonsig_position") {
      spec.drop_nonsig_position = ParseBool(value, fail, key);
    } else if (key == "theta_degeneracy") {
      spec.theta_degeneracy = ParseNumber<double>(value, fail, key);
      if (!(spec.theta_degeneracy >= 0.0)) throw fail("'theta_degeneracy' must be >= 0");
    } else if (key == "quadrature_nodes") {
      spec.quadrature_nodes = ParseNumber<int>(value, fail, key);
      if (spec.quadrature_nodes < 1 || spec.quadrature_nodes > 100) {
        throw fail("'quadrature_nodes' must lie in [1, 100]");
      }
    } else if (key == "prediction_mode") {
      if (value == "conditional") {
        spec.prediction_mode = glmm::PredictionMode::kConditional;
      } else if (value == "population") {
        spec.prediction_mode = glmm::PredictionMode::kPopulation;
      } else {
        throw fail("'prediction_mode' is conditional or population");
      }
    } else if (key == "grid_points") {
      spec.grid_points = ParseNumber<int>(value, fail, key);
      if (spec.grid_points < 2) throw fail("'grid_points' must be at least 2");
    } else if (key == "shrink_policy") {
      if (value == "strict") {
        spec.shrink_policy = harness::ShrinkPolicy::kStrict;
      } else if (value == "lenient") {
        spec.shrink_policy = harness::ShrinkPolicy::kLenient;
      } else {
        throw fail("'shrink_policy' is strict or lenient");
      }
    } else if (key.rfind("dataset.", 0) == 0) {
      const std::size_t dot = key.find('.', 8);
      const std::string id = key.substr(8, dot == std::string::npos ? dot : dot - 8);
      if (!ValidId(id) || dot == std::string::npos) {
        throw fail("bad dataset key '" + key + "'");
      }
      const std::string field = key.substr(dot + 1);
      DatasetSpec& d = datasets[id];
      d.id = id;
      d.mapping.dataset_id = id;
      if (field == "path") {
        d.path = Resolve(base_dir, value);
      } else if (field.rfind("col.", 0) == 0) {
        const std::string col = field.substr(4);
        const std::string v(value);
        reading::ColumnMapping& m = d.mapping;
        if (col == "text_id") m.text_id = v;
        else if (col == "ia_index") m.ia_index = v;
        else if (col == "ia_text") m.ia_text = v;
        else if (col == "subject_id") m.subject_id = v;
        else if (col == "regression") m.regression = v;
        else if (col == "skip") m.skip = v;
        else if (col == "label") m.label = v;
        else if (col == "dataset") m.dataset_column = v;
        else throw fail("unknown column field '" + col + "'");
      } else {
        throw fail("unknown dataset field '" + field + "'");
      }
    } else if (key.rfind("labeller.", 0) == 0) {
      const std::size_t dot = key.find('.', 9);
      const std::string id = key.substr(9, dot == std::string::npos ? dot : dot - 9);
      if (!ValidId(id) || dot == std::string::npos) {
        throw fail("bad labeller key '" + key + "'");
      }
      const std::string field = key.substr(dot + 1);
      LabellerSpec& l = labellers[id];
      l.id = id;
      if (field == "command") {
        l.command = std::string(value);
      } else if (field == "trace") {
        l.trace = std::string(value);
      } else {
        throw fail("unknown labeller field '" + field + "'");
      }
      if (value.empty()) throw fail("'" + key + "' is empty");
    } else {
      throw fail("unknown key '" + key + "'");
    }
  }

  for (auto& [id, d] : datasets) {
    if (d.path.empty()) {
      throw Error(ErrorKind::kUsage, std::string(source_name) + ": dataset '" + id +
                                         "' has no 'path'");
    }
    spec.datasets.push_back(std::move(d));
  }
  for (auto& [id, l] : labellers) {
    if (l.command.empty() == l.trace.empty()) {
      throw Error(ErrorKind::kUsage,
                  std::string(source_name) + ": labeller '" + id +
                      "' needs exactly one of 'command' and 'trace'");
    }
    spec.labellers.push_back(std::move(l));
  }
  return spec;
}

RunSpec LoadRunSpec(const std::filesystem::path& path) {
  const std::string text = ReadFile(path);
  std::filesystem::path base = path.parent_path();
  if (base.empty()) base = ".";
  return ParseRunSpec(text, base, path.string());
}

}  // namespace gazerev::report
