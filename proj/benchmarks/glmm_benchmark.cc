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
#include <vector>

#include "gazerev/glmm/design.h"
#include "gazerev/glmm/distributions.h"
#include "gazerev/glmm/glmm.h"

namespace {

using gazerev::glmm::DesignMatrix;

// Random-intercept logistic data with `p` standard-normal covariates.
DesignMatrix Simulate(int n, int groups, int p) {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> z;
  std::uniform_real_distribution<double> u;
  std::vector<double> effect(groups);
  for (double& e : effect) e = 0.6 * z(rng);
  Eigen::MatrixXd x(n, p + 1);
  Eigen::VectorXd y(n);
  std::vector<std::string> labels(n);
  for (int i = 0; i < n; ++i) {
    x(i, 0) = 1.0;
    double eta = -0.4 + effect[i % groups];
    for (int j = 1; j <= p; ++j) {
      x(i, j) = z(rng);
      eta += 0.5 * x(i, j);
    }
    y[i] = u(rng) < gazerev::glmm::InverseLogit(eta) ? 1.0 : 0.0;
    labels[i] = "g" + std::to_string(i % groups);
  }
  std::vector<std::string> columns = {"intercept"};
  for (int j = 1; j <= p; ++j) columns.push_back("x" + std::to_string(j));
  return gazerev::glmm::MakeDesign(y, x, columns, labels);
}

void BM_MarginalLogLik(benchmark::State& state) {
  const DesignMatrix design = Simulate(static_cast<int>(state.range(0)), 40, 3);
  const gazerev::glmm::MarginalLogLik ll(design);
  const Eigen::VectorXd beta = Eigen::VectorXd::Constant(4, 0.1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ll.Evaluate(beta, 0.6, true));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MarginalLogLik)->Arg(600)->Arg(4000);

void BM_FitGlmm(benchmark::State& state) {
  const DesignMatrix design = Simulate(static_cast<int>(state.range(0)), 20, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(gazerev::glmm::FitGlmmBinomial(design));
  }
}
BENCHMARK(BM_FitGlmm)->Arg(600)->Arg(4000)->Unit(benchmark::kMillisecond);

}  // namespace
