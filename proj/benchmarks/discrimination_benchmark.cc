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
#include <vector>

#include "gazerev/eval/discrimination.h"

namespace {

struct Scores {
  std::vector<double> values;
  std::vector<int> labels;
};

Scores MakeScores(int n) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> z;
  Scores s;
  for (int i = 0; i < n; ++i) {
    s.labels.push_back(i % 4 == 0);
    s.values.push_back(z(rng) + 0.5 * s.labels.back());
  }
  return s;
}

void BM_Auc(benchmark::State& state) {
  const Scores s = MakeScores(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(gazerev::eval::Auc(s.values, s.labels));
}
BENCHMARK(BM_Auc)->Arg(600)->Arg(20000);

void BM_PermutationTest(benchmark::State& state) {
  const Scores s = MakeScores(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(gazerev::eval::PermutationTest(s.values, s.labels, 1000, 1));
  }
}
BENCHMARK(BM_PermutationTest)->Arg(600)->Unit(benchmark::kMillisecond);

}  // namespace
