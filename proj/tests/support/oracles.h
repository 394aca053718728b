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

// Independent reference implementations used to check the library. They
// favour obviousness over speed and share no code with gazerev::core
// beyond the plain data types.

#ifndef GAZEREV_TESTS_SUPPORT_ORACLES_H_
#define GAZEREV_TESTS_SUPPORT_ORACLES_H_

#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "gazerev/glmm/design.h"

namespace gazerev::testing {

struct OracleFlags {
  std::vector<bool> revised;
  std::vector<bool> effective;
};

// Position-by-position recomputation over steps[0..N).
OracleFlags BruteForceRevisions(const std::vector<std::vector<std::string>>& steps);

// log of prod_g integral over u of prod_i Bernoulli(y_i | x_i b + u) N(u; 0, theta^2)
// by the trapezoid rule on `points` nodes over [-8 theta - 8, 8 theta + 8].
// theta == 0 is the plain Bernoulli log-likelihood.
double DenseGridMarginalLogLik(const glmm::DesignMatrix& design, const Eigen::VectorXd& beta,
                               double theta, int points = 2001);

// Pairwise counting over all (positive, negative) pairs.
double PairwiseAuc(const std::vector<double>& scores, const std::vector<int>& labels);

// Exact permutation p-value: share of all label subsets (of the observed
// positive count) whose |mean difference| reaches the observed one.
double ExhaustivePermutationP(const std::vector<double>& scores, const std::vector<int>& labels);

struct SimulatedGlmm {
  glmm::DesignMatrix design;
  std::vector<double> group_effects;
};

// columns: intercept then k-1 standard-normal covariates.
SimulatedGlmm SimulateGlmm(int n, int groups, const Eigen::VectorXd& beta, double theta,
                           std::uint64_t seed);

// Seeded random label traces over `alphabet` with each step at least as
// long as the previous one; a label survives to the next step w.p. 3/4.
std::vector<std::vector<std::string>> RandomTrace(std::mt19937_64& rng, int max_len,
                                                  const std::string& alphabet, int extra = 1);

}  // namespace gazerev::testing

#endif  // GAZEREV_TESTS_SUPPORT_ORACLES_H_
