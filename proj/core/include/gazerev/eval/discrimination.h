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

// Discrimination between revision and non-revision timesteps from model
// scores: a permutation test on the absolute difference of class means and
// the area under the ROC curve.

#ifndef GAZEREV_EVAL_DISCRIMINATION_H_
#define GAZEREV_EVAL_DISCRIMINATION_H_

#include <cstdint>
#include <random>
#include <span>

namespace gazerev::eval {

struct PermutationResult {
  double observed = 0.0;  // |mean(score | 1) - mean(score | 0)|
  double p_value = 1.0;   // (1 + #{permuted >= observed}) / (n_permutations + 1)
  int n_permutations = 0;
  std::uint64_t seed = 0;
};

inline constexpr int kDefaultPermutations = 10000;

// Labels must be 0/1 and contain both classes (kDegenerate otherwise).
// The result depends only on (scores, labels, n_permutations, seed).
PermutationResult PermutationTest(std::span<const double> scores,
                                  std::span<const int> labels,
                                  int n_permutations = kDefaultPermutations,
                                  std::uint64_t seed = 0);

// Mann-Whitney AUC; a tie between a positive and a negative counts 1/2.
double Auc(std::span<const double> scores, std::span<const int> labels);

// Uniform integer in [0, bound) drawn by rejection, independent of the
// standard library's distribution implementation.
std::uint64_t UniformBelow(std::mt19937_64& rng, std::uint64_t bound);

// SplitMix64 finalizer, used to derive per-chunk stream seeds.
std::uint64_t SplitMix64(std::uint64_t x);

}  // namespace gazerev::eval

#endif  // GAZEREV_EVAL_DISCRIMINATION_H_
