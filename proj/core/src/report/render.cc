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

#include "gazerev/report/render.h"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "gazerev/error.h"
#include "gazerev/glmm/fit_io.h"

namespace gazerev::report {
namespace {

// Response name in the bundle -> column label in the tables.
const std::map<std::string, std::string, std::less<>> kResponseLabels = {
    {"revised", "all-r"}, {"effective", "eff-r"}};

const std::vector<std::pair<std::string, std::string>> kTermLabels = {
    {"intercept", "intercept"},
    {"p_reg", "p(reg)"},
    {"p_skip", "p(skip)"},
    {"position", "position"}};

std::size_t Col(const DelimitedTable& table, std::string_view name) {
  const auto c = table.Column(name);
  if (!c) throw Error(ErrorKind::kSchema, "bundle section lacks column '" +
                                              std::string(name) + "'");
  return *c;
}

double Real(const std::string& field) { return glmm::ParseReal(field); }

void AppendUnique(std::vector<std::string>& list, const std::string& value) {
  if (std::find(list.begin(), list.end(), value) == list.end()) list.push_back(value);
}

// Response names present in a section, in the canonical order.
std::vector<std::string> ResponsesIn(const DelimitedTable& table) {
  const std::size_t c = Col(table, "response");
  std::vector<std::string> out;
  for (const char* name : {"revised", "effective"}) {
    for (const auto& row : table.rows) {
      if (row[c] == name) {
        out.push_back(name);
        break;
      }
    }
  }
  return out;
}

std::string Key(std::initializer_list<std::string_view> parts) {
  std::string key;
  for (std::string_view p : parts) {
    key += p;
    key.push_back('\x1f');
  }
  return key;
}

RenderedTable RevisionsTable(const Bundle& bundle) {
  const DelimitedTable& t = bundle.Section(kRevisionStatsFile);
  const std::size_t ds = Col(t, "dataset_id"), lab = Col(t, "labeller_id"),
                    task = Col(t, "task"), all = Col(t, "all_r"), eff = Col(t, "eff_r");
  std::vector<std::string> datasets;
  std::vector<std::pair<std::string, std::string>> rows;
  std::map<std::string, const std::vector<std::string>*> cells;
  for (const auto& r : t.rows) {
    AppendUnique(datasets, r[ds]);
    const std::pair<std::string, std::string> key{r[lab], r[task]};
    if (std::find(rows.begin(), rows.end(), key) == rows.end()) rows.push_back(key);
    cells[Key({r[ds], r[lab], r[task]})] = &r;
  }
  std::sort(rows.begin(), rows.end());
  RenderedTable out;
  out.label_columns = 2;
  out.columns = {"labeller", "task"};
  for (const auto& d : datasets) {
    out.groups.emplace_back(d, 2);
    out.columns.push_back("all-r");
    out.columns.push_back("eff-r");
  }
  for (const auto& [labeller, task_name] : rows) {
    std::vector<std::string> line = {labeller, task_name};
    for (const auto& d : datasets) {
      const auto it = cells.find(Key({d, labeller, task_name}));
      if (it == cells.end()) {
        line.insert(line.end(), {"-", "-"});
      } else {
        line.push_back(FormatFixed(Real((*it->second)[all])));
        line.push_back(FormatFixed(Real((*it->second)[eff])));
      }
    }
    out.body.push_back(std::move(line));
  }
  return out;
}

RenderedTable CoefficientsTable(const Bundle& bundle) {
  const DelimitedTable& t = bundle.Section(kCoefficientsFile);
  const std::size_t ds = Col(t, "dataset_id"), lab = Col(t, "labeller_id"),
                    task = Col(t, "task"), resp = Col(t, "response"),
                    model = Col(t, "model"), term = Col(t, "term"),
                    est = Col(t, "estimate"), se = Col(t, "se"), z = Col(t, "z"),
                    p = Col(t, "p");
  const std::vector<std::string> responses = ResponsesIn(t);
  std::vector<std::vector<std::string>> cells_order;
  std::map<std::string, const std::vector<std::string>*> cells;
  for (const auto& r : t.rows) {
    if (r[model] != "full") continue;
    std::vector<std::string> key = {r[ds], r[lab], r[task]};
    if (std::find(cells_order.begin(), cells_order.end(), key) == cells_order.end()) {
      cells_order.push_back(key);
    }
    cells[Key({r[ds], r[lab], r[task], r[resp], r[term]})] = &r;
  }
  RenderedTable out;
  out.label_columns = 4;
  out.columns = {"dataset", "labeller", "task", "term"};
  for (const char* group : {"estimate", "SE", "z", "p"}) {
    out.groups.emplace_back(group, static_cast<int>(responses.size()));
    for (const auto& r : responses) out.columns.push_back(kResponseLabels.at(r));
  }
  for (const auto& key : cells_order) {
    for (const auto& [term_name, term_label] : kTermLabels) {
      std::vector<std::string> line = {key[0], key[1], key[2], term_label};
      std::vector<const std::vector<std::string>*> found;
      for (const auto& r : responses) {
        const auto it = cells.find(Key({key[0], key[1], key[2], r, term_name}));
        found.push_back(it == cells.end() ? nullptr : it->second);
      }
      for (const auto* f : found) {
        line.push_back(f ? FormatFixed(Real((*f)[est])) +
                               RenderSignificance(Real((*f)[p]))
                         : "-");
      }
      for (const auto* f : found) line.push_back(f ? FormatFixed(Real((*f)[se])) : "-");
      for (const auto* f : found) line.push_back(f ? FormatFixed(Real((*f)[z])) : "-");
      for (const auto* f : found) line.push_back(f ? FormatPValue(Real((*f)[p])) : "-");
      out.body.push_back(std::move(line));
    }
  }
  return out;
}

RenderedTable LrtTable(const Bundle& bundle) {
  const DelimitedTable& t = bundle.Section(kLrtFile);
  const std::size_t ds = Col(t, "dataset_id"), lab = Col(t, "labeller_id"),
                    task = Col(t, "task"), resp = Col(t, "response"),
                    bic = Col(t, "bic_full"), chi2 = Col(t, "chi2"), df = Col(t, "df"),
                    p = Col(t, "p");
  const std::vector<std::string> responses = ResponsesIn(t);
  std::vector<std::vector<std::string>> order;
  std::map<std::string, const std::vector<std::string>*> cells;
  for (const auto& r : t.rows) {
    std::vector<std::string> key = {r[ds], r[lab], r[task]};
    if (std::find(order.begin(), order.end(), key) == order.end()) order.push_back(key);
    cells[Key({r[ds], r[lab], r[task], r[resp]})] = &r;
  }
  RenderedTable out;
  out.label_columns = 3;
  out.columns = {"dataset", "labeller", "task"};
  for (const char* group : {"BIC", "\xcf\x87\xc2\xb2", "Df", "p"}) {
    out.groups.emplace_back(group, static_cast<int>(responses.size()));
    for (const auto& r : responses) out.columns.push_back(kResponseLabels.at(r));
  }
  for (const auto& key : order) {
    std::vector<std::string> line = key;
    std::vector<const std::vector<std::string>*> found;
    for (const auto& r : responses) {
      const auto it = cells.find(Key({key[0], key[1], key[2], r}));
      found.push_back(it == cells.end() ? nullptr : it->second);
    }
    for (const auto* f : found) line.push_back(f ? FormatFixed(Real((*f)[bic])) : "-");
    for (const auto* f : found) line.push_back(f ? FormatFixed(Real((*f)[chi2])) : "-");
    for (const auto* f : found) line.push_back(f ? (*f)[df] : "-");
    for (const auto* f : found) line.push_back(f ? FormatPValue(Real((*f)[p])) : "-");
    out.body.push_back(std::move(line));
  }
  return out;
}

RenderedTable PredictionsTable(const Bundle& bundle) {
  const DelimitedTable& t = bundle.Section(kPredictionsFile);
  const std::size_t ds = Col(t, "dataset_id"), lab = Col(t, "labeller_id"),
                    task = Col(t, "task"), resp = Col(t, "response"),
                    diff = Col(t, "abs_mean_diff"), perm_p = Col(t, "perm_p"),
                    auc = Col(t, "auc");
  const std::vector<std::string> responses = ResponsesIn(t);
  std::vector<std::vector<std::string>> order;
  std::map<std::string, const std::vector<std::string>*> cells;
  for (const auto& r : t.rows) {
    std::vector<std::string> key = {r[ds], r[task], r[lab]};
    if (std::find(order.begin(), order.end(), key) == order.end()) order.push_back(key);
    cells[Key({r[ds], r[task], r[lab], r[resp]})] = &r;
  }
  std::sort(order.begin(), order.end());
  RenderedTable out;
  out.label_columns = 3;
  out.columns = {"dataset", "task", "labeller"};
  for (const char* group : {"abs. mean diff", "AUC"}) {
    out.groups.emplace_back(group, static_cast<int>(responses.size()));
    for (const auto& r : responses) out.columns.push_back(kResponseLabels.at(r));
  }
  for (const auto& key : order) {
    std::vector<std::string> line = key;
    std::vector<const std::vector<std::string>*> found;
    for (const auto& r : responses) {
      const auto it = cells.find(Key({key[0], key[1], key[2], r}));
      found.push_back(it == cells.end() ? nullptr : it->second);
    }
    for (const auto* f : found) {
      line.push_back(f ? FormatFixed(Real((*f)[diff])) +
                             RenderPermutationMarker(Real((*f)[perm_p]))
                       : "-");
    }
    for (const auto* f : found) line.push_back(f ? FormatFixed(Real((*f)[auc])) : "-");
    out.body.push_back(std::move(line));
  }
  return out;
}

// Display width in code points, so "χ²" counts as two columns.
std::size_t Width(std::string_view s) {
  std::size_t w = 0;
  for (unsigned char c : s) w += (c & 0xc0) != 0x80;
  return w;
}

void Pad(std::string& out, std::string_view cell, std::size_t width, bool left) {
  const std::size_t fill = width > Width(cell) ? width - Width(cell) : 0;
  if (!left) out.append(fill, ' ');
  out += cell;
  if (left) out.append(fill, ' ');
}

}  // namespace

std::string RenderSignificance(double p) {
  if (p < 0.001) return "***";
  if (p < 0.01) return "**";
  if (p < 0.05) return "*";
  return "";
}

std::string RenderPermutationMarker(double p) { return p < 0.001 ? "*" : ""; }

std::string FormatFixed(double value, int decimals) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  std::string s = fmt::format("{:.{}f}", value, decimals);
  if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

std::string FormatPValue(double p) {
  if (std::isnan(p)) return "nan";
  if (p < 0.001) return "<0.001";
  return FormatFixed(p, 3);
}

std::string_view TableKindName(TableKind kind) {
  switch (kind) {
    case TableKind::kRevisions: return "revisions";
    case TableKind::kCoefficients: return "coefficients";
    case TableKind::kLrt: return "lrt";
    case TableKind::kPredictions: return "predictions";
  }
  return "?";
}

std::optional<TableKind> ParseTableKind(std::string_view name) {
  for (TableKind kind : kAllTables) {
    if (TableKindName(kind) == name) return kind;
  }
  return std::nullopt;
}

RenderedTable BuildTable(const Bundle& bundle, TableKind kind) {
  switch (kind) {
    case TableKind::kRevisions: return RevisionsTable(bundle);
    case TableKind::kCoefficients: return CoefficientsTable(bundle);
    case TableKind::kLrt: return LrtTable(bundle);
    case TableKind::kPredictions: return PredictionsTable(bundle);
  }
  throw Error(ErrorKind::kUsage, "unknown table");
}

std::string FormatAligned(const RenderedTable& table) {
  const std::size_t n = table.columns.size();
  std::vector<std::size_t> width(n, 0);
  for (std::size_t c = 0; c < n; ++c) width[c] = Width(table.columns[c]);
  for (const auto& row : table.body) {
    for (std::size_t c = 0; c < n && c < row.size(); ++c) {
      width[c] = std::max(width[c], Width(row[c]));
    }
  }
  // Widen the last column of a group when its label does not fit the span.
  std::size_t c = static_cast<std::size_t>(table.label_columns);
  for (const auto& [label, span] : table.groups) {
    std::size_t total = 0;
    for (int k = 0; k < span; ++k) total += width[c + k] + (k ? 2 : 0);
    if (span > 0 && Width(label) > total) width[c + span - 1] += Width(label) - total;
    c += span;
  }
  const std::string sep = "  ";
  std::string out;
  auto finish_line = [&out] {
    while (!out.empty() && out.back() == ' ') out.pop_back();
    out.push_back('\n');
  };
  if (!table.groups.empty()) {
    for (int k = 0; k < table.label_columns; ++k) {
      if (k) out += sep;
      out.append(width[k], ' ');
    }
    c = static_cast<std::size_t>(table.label_columns);
    for (const auto& [label, span] : table.groups) {
      std::size_t total = 0;
      for (int k = 0; k < span; ++k) total += width[c + k] + (k ? 2 : 0);
      if (c) out += sep;
      const std::size_t left = (total - std::min(total, Width(label))) / 2;
      out.append(left, ' ');
      Pad(out, label, total - left, true);
      c += span;
    }
    finish_line();
  }
  auto emit = [&](const std::vector<std::string>& row) {
    for (std::size_t k = 0; k < n; ++k) {
      if (k) out += sep;
      const bool left = static_cast<int>(k) < table.label_columns;
      Pad(out, k < row.size() ? row[k] : "", width[k], left);
    }
    finish_line();
  };
  emit(table.columns);
  std::size_t rule = 0;
  for (std::size_t k = 0; k < n; ++k) rule += width[k] + (k ? sep.size() : 0);
  out.append(rule, '-');
  out.push_back('\n');
  for (const auto& row : table.body) emit(row);
  return out;
}

std::string FormatCsv(const RenderedTable& table) {
  std::vector<std::string> header(table.columns.begin(),
                                  table.columns.begin() + table.label_columns);
  std::size_t c = static_cast<std::size_t>(table.label_columns);
  for (const auto& [label, span] : table.groups) {
    for (int k = 0; k < span; ++k, ++c) header.push_back(label + " " + table.columns[c]);
  }
  for (; c < table.columns.size(); ++c) header.push_back(table.columns[c]);
  std::string out = JoinFields(header, ',') + "\n";
  for (const auto& row : table.body) out += JoinFields(row, ',') + "\n";
  return out;
}

std::vector<std::pair<std::string, std::string>> RenderAll(const Bundle& bundle) {
  std::vector<std::pair<std::string, std::string>> files;
  for (TableKind kind : kAllTables) {
    const RenderedTable table = BuildTable(bundle, kind);
    const std::string name(TableKindName(kind));
    files.emplace_back(name + ".txt", FormatAligned(table));
    files.emplace_back(name + ".csv", FormatCsv(table));
  }
  return files;
}

}  // namespace gazerev::report
