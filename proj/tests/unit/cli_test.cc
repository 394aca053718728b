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

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <string>

#include "gazerev/csv.h"
#include "gazerev/report/synthetic.h"

namespace {

namespace fs = std::filesystem;

struct CliRun {
  int exit_code = -1;
  std::string output;  // stdout and stderr interleaved
};

CliRun Cli(const std::string& args) {
  const std::string command = std::string(GAZEREV_CLI) + " " + args + " 2>&1";
  CliRun run;
  FILE* pipe = popen(command.c_str(), "r");
  if (pipe == nullptr) return run;
  std::array<char, 4096> buffer{};
  std::size_t n = 0;
  while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) run.output.append(buffer.data(), n);
  const int status = pclose(pipe);
  run.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return run;
}

class CliTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = new fs::path(fs::temp_directory_path() / "gazerev_cli_test");
    fs::remove_all(*dir_);
    gazerev::report::SyntheticOptions options;
    options.texts = 10;
    options.ias_per_text = 20;
    options.subjects = 12;
    gazerev::report::WriteSyntheticFixture(gazerev::report::MakeSyntheticStudy(options),
                                           *dir_ / "in", 5, 200);
  }
  static void TearDownTestSuite() {
    fs::remove_all(*dir_);
    delete dir_;
  }
  static fs::path* dir_;
};

fs::path* CliTest::dir_ = nullptr;

TEST_F(CliTest, UsageErrorsExitTwo) {
  EXPECT_EQ(Cli("").exit_code, 2);
  EXPECT_EQ(Cli("frobnicate").exit_code, 2);
  EXPECT_EQ(Cli("analyze").exit_code, 2);  // --config is required
  EXPECT_EQ(Cli("report --bundle x --table nope").exit_code, 2);
  const fs::path bad = *dir_ / "bad.cfg";
  gazerev::WriteFile(bad, "unknown_key = 1\n");
  const CliRun r = Cli("analyze --config " + bad.string() + " --out " + (*dir_ / "o").string());
  EXPECT_EQ(r.exit_code, 2) << r.output;
  EXPECT_NE(r.output.find("bad.cfg:1"), std::string::npos) << r.output;
}

TEST_F(CliTest, MissingDatasetExitsOneNamingThePath) {
  const fs::path cfg = *dir_ / "missing.cfg";
  gazerev::WriteFile(cfg,
                     "tasks = pos\n"
                     "dataset.d.path = nowhere/reading.tsv\n"
                     "labeller.l.trace = t.jsonl\n");
  const CliRun r = Cli("analyze --config " + cfg.string() + " --out " + (*dir_ / "o").string());
  EXPECT_EQ(r.exit_code, 1) << r.output;
  EXPECT_NE(r.output.find("nowhere/reading.tsv"), std::string::npos) << r.output;
}

TEST_F(CliTest, AnalyzeThenReport) {
  const fs::path out = *dir_ / "bundle";
  const CliRun analyze =
      Cli("analyze --config " + (*dir_ / "in" / "run.cfg").string() + " --out " + out.string());
  ASSERT_EQ(analyze.exit_code, 0) << analyze.output;
  EXPECT_TRUE(fs::exists(out / "manifest.txt"));

  const CliRun lrt = Cli("report --bundle " + out.string() + " --table lrt");
  ASSERT_EQ(lrt.exit_code, 0) << lrt.output;
  for (const char* label : {"BIC", "χ²", "Df", "p"}) {
    EXPECT_NE(lrt.output.find(label), std::string::npos) << lrt.output;
  }
  const CliRun revisions = Cli("report --bundle " + out.string() + " --table revisions");
  EXPECT_NE(revisions.output.find("all-r"), std::string::npos) << revisions.output;

  const fs::path rendered = *dir_ / "rendered";
  const CliRun all = Cli("report --bundle " + out.string() + " --out " + rendered.string());
  ASSERT_EQ(all.exit_code, 0) << all.output;
  EXPECT_TRUE(fs::exists(rendered / "lrt.txt"));
  EXPECT_TRUE(fs::exists(rendered / "predictions.csv"));

  fs::remove(out / "lrt.csv");
  const CliRun partial = Cli("report --bundle " + out.string());
  EXPECT_EQ(partial.exit_code, 1);
  EXPECT_NE(partial.output.find("lrt.csv"), std::string::npos) << partial.output;
}

TEST_F(CliTest, SelfCheckPasses) {
  const CliRun r = Cli("selfcheck --out " + (*dir_ / "selfcheck").string());
  EXPECT_EQ(r.exit_code, 0) << r.output;
  EXPECT_NE(r.output.find("PASS"), std::string::npos) << r.output;
  EXPECT_EQ(r.output.find("FAIL"), std::string::npos) << r.output;
}

}  // namespace
