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

#include "gazerev/glmm/distributions.h"

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <string>

#include "gazerev/error.h"

namespace gazerev::glmm {

double Chi2Survival(double x, double df) {
  if (!(df >= 1.0) || !std::isfinite(df)) {
    throw Error(ErrorKind::kDomain,
                "chi-squared degrees of freedom must be >= 1, got " +
                    std::to_string(df));
  }
  if (!(x >= 0.0)) {
    throw Error(ErrorKind::kDomain,
                "chi-squared statistic must be >= 0, got " + std::to_string(x));
  }
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  return boost::math::gamma_q(0.5 * df, 0.5 * x);
}

double NormalSurvival(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

double InverseLogit(double eta) {
  if (eta >= 0.0) return 1.0 / (1.0 + std::exp(-eta));
  const double e = std::exp(eta);
  return e / (1.0 + e);
}

double Log1pExp(double x) {
  if (x > 0.0) return x + std::log1p(std::exp(-x));
  return std::log1p(std::exp(x));
}

}  // namespace gazerev::glmm
