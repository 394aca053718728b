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

#include <benchmark/benchmark.h>

#include <random>
#include <string>

#include "gazerev/harness/revisions.h"
#include "gazerev/harness/trace.h"

namespace {

gazerev::harness::IncrementalTrace MakeTrace(int length) {
  std::mt19937_64 rng(3);
  gazerev::harness::IncrementalTrace trace;
  trace.text_id = "bench";
  gazerev::harness::LabelSequence current;
  for (int t = 0; t < length; ++t) {
    for (auto& label : current) {
      if (rng() % 8 == 0) label = std::string(1, static_cast<char>('A' + rng() % 4));
    }
    current.push_back(std::string(1, static_cast<char>('A' + rng() % 4)));
    trace.steps.push_back(current);
  }
  return trace;
}

void BM_DetectRevisions(benchmark::State& state) {
  const auto trace = MakeTrace(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(gazerev::harness::DetectRevisions(trace));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_DetectRevisions)->Arg(30)->Arg(300);

}  // namespace
