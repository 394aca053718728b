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

// gazerev: command-line driver.
//
//   gazerev ingest    --config run.cfg --out DIR
//   gazerev record    --config run.cfg --out DIR
//   gazerev analyze   --config run.cfg --out DIR [--seed N]
//   gazerev report    --bundle DIR [--table NAME] [--out DIR]
//   gazerev selfcheck [--out DIR] [--seed N]
//
// Exit status: 0 success, 1 domain error, 2 usage error. When --out is
// omitted, GAZEREV_OUT names the output directory.

#include <CLI11.hpp>

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <unistd.h>

#include "gazerev/csv.h"
#include "gazerev/error.h"
#include "gazerev/report/bundle.h"
#include "gazerev/report/pipeline.h"
#include "gazerev/report/render.h"
#include "gazerev/report/run_spec.h"
#include "gazerev/report/synthetic.h"

namespace {

namespace fs = std::filesystem;
using gazerev::Error;
using gazerev::ErrorKind;

constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

fs::path OutputDir(const std::string& flag, bool required = true) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("GAZEREV_OUT"); env != nullptr && *env != '\0') {
    return env;
  }
  if (required) throw Error(ErrorKind::kUsage, "--out is required (or set GAZEREV_OUT)");
  return {};
}

int RunSelfCheck(const std::string& out_flag, std::uint64_t seed) {
  fs::path dir = OutputDir(out_flag, /*required=*/false);
  const bool temporary = dir.empty();
  if (temporary) {
    dir = fs::temp_directory_path() /
          ("gazerev-selfcheck-" + std::to_string(static_cast<long>(::getpid())));
  }
  const gazerev::report::SelfCheckReport report = gazerev::report::RunSelfCheck(dir, seed);
  for (const auto& item : report.items) {
    std::cout << (item.passed ? "PASS " : "FAIL ") << item.name << ": " << item.detail
              << "\n";
  }
  if (temporary) {
    std::error_code ec;
    fs::remove_all(dir, ec);
  } else {
    std::cout << "bundle: " << report.bundle_dir.string() << "\n";
  }
  return report.passed() ? 0 : kExitDomain;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Relate incremental labeller revisions to human reading regressions"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(GAZEREV_CLI_VERSION));

  std::string config, out, bundle, table;
  std::optional<std::uint64_t> seed;

  CLI::App* ingest = app.add_subcommand("ingest", "Normalize reading data");
  ingest->add_option("--config", config, "Run configuration")->required();
  ingest->add_option("--out", out, "Output directory");

  CLI::App* record = app.add_subcommand("record", "Replay texts through labellers");
  record->add_option("--config", config, "Run configuration")->required();
  record->add_option("--out", out, "Output directory");

  CLI::App* analyze = app.add_subcommand("analyze", "Fit models and write a results bundle");
  analyze->add_option("--config", config, "Run configuration")->required();
  analyze->add_option("--out", out, "Bundle directory");
  analyze->add_option("--seed", seed, "Override the configured seed");

  CLI::App* report = app.add_subcommand("report", "Render tables from a results bundle");
  report->add_option("--bundle", bundle, "Bundle directory")->required();
  report->add_option("--table", table, "revisions|coefficients|lrt|predictions")
      ->check(CLI::IsMember({"revisions", "coefficients", "lrt", "predictions"}));
  report->add_option("--out", out, "Write every table as .txt and .csv here");

  CLI::App* selfcheck = app.add_subcommand("selfcheck", "Run the built-in end-to-end fixture");
  selfcheck->add_option("--out", out, "Keep the fixture and bundle in this directory");
  selfcheck->add_option("--seed", seed, "Permutation seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (ingest->parsed()) {
      const auto spec = gazerev::report::LoadRunSpec(config);
      for (const auto& p : gazerev::report::Ingest(spec, OutputDir(out))) {
        std::cout << p.string() << "\n";
      }
    } else if (record->parsed()) {
      const auto spec = gazerev::report::LoadRunSpec(config);
      for (const auto& p : gazerev::report::Record(spec, OutputDir(out))) {
        std::cout << p.string() << "\n";
      }
    } else if (analyze->parsed()) {
      auto spec = gazerev::report::LoadRunSpec(config);
      if (seed) spec.seed = *seed;
      const fs::path dir = OutputDir(out);
      gazerev::report::WriteBundle(gazerev::report::Analyze(spec), dir);
      std::cout << "bundle written to " << dir.string() << "\n";
    } else if (report->parsed()) {
      const auto loaded = gazerev::report::LoadBundle(bundle);
      if (!out.empty()) {
        for (const auto& [name, contents] : gazerev::report::RenderAll(loaded)) {
          gazerev::WriteFile(fs::path(out) / name, contents);
        }
      }
      if (!table.empty()) {
        const auto kind = gazerev::report::ParseTableKind(table);
        std::cout << gazerev::report::FormatAligned(
            gazerev::report::BuildTable(loaded, *kind));
      } else if (out.empty()) {
        for (auto kind : gazerev::report::kAllTables) {
          std::cout << gazerev::report::TableKindName(kind) << "\n"
                    << gazerev::report::FormatAligned(
                           gazerev::report::BuildTable(loaded, kind))
                    << "\n";
        }
      }
    } else if (selfcheck->parsed()) {
      return RunSelfCheck(out, seed.value_or(7));
    }
  } catch (const Error& e) {
    std::cerr << "gazerev: " << gazerev::ErrorKindName(e.kind()) << ": " << e.what() << "\n";
    return e.kind() == ErrorKind::kUsage ? kExitUsage : kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "gazerev: " << e.what() << "\n";
    return kExitDomain;
  }
  return 0;
}
