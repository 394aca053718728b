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

#include "gazerev/eval/discrimination.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "gazerev/error.h"

namespace gazerev::eval {
namespace {

// Permutations are drawn in fixed-size chunks, each from its own stream, so
// the draw sequence does not depend on how the work is scheduled.
constexpr int kChunk = 1000;

struct ClassCounts {
  std::size_t positives = 0;
  std::size_t negatives = 0;
};

ClassCounts CheckInputs(std::span<const double> scores, std::span<const int> labels) {
  if (scores.size() != labels.size()) {
    throw Error(ErrorKind::kAlignment,
                "scores and labels differ in length (" + std::to_string(scores.size()) +
                    " vs " + std::to_string(labels.size()) + ")");
  }
  ClassCounts counts;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == 1) {
      ++counts.positives;
    } else if (labels[i] == 0) {
      ++counts.negatives;
    } else {
      throw Error(ErrorKind::kDomain, "labels must be 0 or 1");
    }
    if (!std::isfinite(scores[i])) {
      throw Error(ErrorKind::kDomain, "scores must be finite");
    }
  }
  if (counts.positives == 0 || counts.negatives == 0) {
    throw Error(ErrorKind::kDegenerate,
                "labels contain a single class; discrimination is undefined");
  }
  return counts;
}

double AbsMeanDiff(double sum_pos, double total, const ClassCounts& c) {
  const double mean_pos = sum_pos / static_cast<double>(c.positives);
  const double mean_neg = (total - sum_pos) / static_cast<double>(c.negatives);
  return std::abs(mean_pos - mean_neg);
}

}  // namespace

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t UniformBelow(std::mt19937_64& rng, std::uint64_t bound) {
  // Lemire-style threshold rejection on the full 64-bit output.
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = rng();
    if (r >= threshold) return r % bound;
  }
}

PermutationResult PermutationTest(std::span<const double> scores,
                                  std::span<const int> labels, int n_permutations,
                                  std::uint64_t seed) {
  const ClassCounts counts = CheckInputs(scores, labels);
  if (n_permutations < 1) {
    throw Error(ErrorKind::kDomain, "n_permutations must be positive");
  }
  const std::size_t n = scores.size();
  double total = 0.0;
  double sum_pos = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    total += scores[i];
    if (labels[i] == 1) sum_pos += scores[i];
  }
  PermutationResult result;
  result.observed = AbsMeanDiff(sum_pos, total, counts);
  result.n_permutations = n_permutations;
  result.seed = seed;

  // Only the positive-class membership matters, so a partial Fisher-Yates
  // that fills the first `positives` slots is a uniform draw.
  const std::size_t k = counts.positives;
  std::vector<std::size_t> index(n);
  const double tolerance = 1e-12 * std::max(1.0, result.observed);
  long exceed = 0;
  int done = 0;
  for (int chunk = 0; done < n_permutations; ++chunk) {
    std::mt19937_64 rng(SplitMix64(seed ^ SplitMix64(static_cast<std::uint64_t>(chunk))));
    const int todo = std::min(kChunk, n_permutations - done);
    // Each draw starts from the previous arrangement; that is still uniform
    // because the new swaps are independent of it. Reset per chunk only.
    std::iota(index.begin(), index.end(), std::size_t{0});
    for (int r = 0; r < todo; ++r) {
      double s = 0.0;
      for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = i + UniformBelow(rng, n - i);
        std::swap(index[i], index[j]);
        s += scores[index[i]];
      }
      if (AbsMeanDiff(s, total, counts) >= result.observed - tolerance) ++exceed;
    }
    done += todo;
  }
  result.p_value = (1.0 + static_cast<double>(exceed)) /
                   (static_cast<double>(n_permutations) + 1.0);
  return result;
}

double Auc(std::span<const double> scores, std::span<const int> labels) {
  const ClassCounts counts = CheckInputs(scores, labels);
  std::vector<double> negatives;
  negatives.reserve(counts.negatives);
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (labels[i] == 0) negatives.push_back(scores[i]);
  }
  std::sort(negatives.begin(), negatives.end());
  // twice the Mann-Whitney U, kept integral so ties are exact.
  unsigned long long doubled = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (labels[i] != 1) continue;
    const auto lo = std::lower_bound(negatives.begin(), negatives.end(), scores[i]);
    const auto hi = std::upper_bound(lo, negatives.end(), scores[i]);
    doubled += 2ULL * static_cast<unsigned long long>(lo - negatives.begin()) +
               static_cast<unsigned long long>(hi - lo);
  }
  return static_cast<double>(doubled) /
         (2.0 * static_cast<double>(counts.positives) *
          static_cast<double>(counts.negatives));
}

}  // namespace gazerev::eval
