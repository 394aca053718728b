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

#include "gazerev/glmm/glmm.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>

#include "gazerev/error.h"
#include "gazerev/glmm/distributions.h"

namespace gazerev::glmm {
namespace {

constexpr double kLogSqrt2Pi = 0.91893853320467274178;  // log(sqrt(2 pi))

// Objective for the minimizer: value and gradient at a point.
using Objective =
    std::function<double(const Eigen::VectorXd& point, Eigen::VectorXd* grad)>;

struct MinimizeResult {
  Eigen::VectorXd point;
  double value = 0.0;
  Eigen::VectorXd grad;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
  std::vector<std::string> trace;
};

// BFGS with a backtracking Armijo line search. `inverse_hessian` is the
// starting approximation; `max_move`, when non-empty, caps the first trial
// step per coordinate.
MinimizeResult MinimizeBfgs(const Objective& objective, Eigen::VectorXd start,
                            Eigen::MatrixXd inverse_hessian, double tolerance,
                            int max_evaluations,
                            const std::function<bool(const Eigen::VectorXd&)>& stop_early = {},
                            const Eigen::VectorXd& max_move = {}) {
  MinimizeResult r;
  r.point = std::move(start);
  r.grad.resize(r.point.size());
  r.value = objective(r.point, &r.grad);
  r.evaluations = 1;
  auto log_step = [&] {
    std::ostringstream line;
    line << "iter " << r.iterations << ": f=" << r.value
         << " |g|=" << r.grad.lpNorm<Eigen::Infinity>();
    r.trace.push_back(line.str());
    if (r.trace.size() > 8) r.trace.erase(r.trace.begin());
  };
  log_step();

  while (r.evaluations < max_evaluations) {
    if (r.grad.lpNorm<Eigen::Infinity>() < tolerance) {
      r.converged = true;
      break;
    }
    if (stop_early && stop_early(r.point)) break;
    Eigen::VectorXd direction = -inverse_hessian * r.grad;
    double slope = r.grad.dot(direction);
    if (!(slope < 0.0)) {
      // Not a descent direction: reset to steepest descent.
      inverse_hessian.setIdentity();
      direction = -r.grad;
      slope = r.grad.dot(direction);
    }
    double step = 1.0;
    for (Eigen::Index j = 0; j < max_move.size(); ++j) {
      if (std::abs(direction[j]) * step > max_move[j]) step = max_move[j] / std::abs(direction[j]);
    }
    Eigen::VectorXd candidate, candidate_grad(r.point.size());
    double candidate_value = 0.0;
    bool accepted = false;
    while (r.evaluations < max_evaluations) {
      candidate = r.point + step * direction;
      candidate_value = objective(candidate, &candidate_grad);
      ++r.evaluations;
      if (std::isfinite(candidate_value) &&
          candidate_value <= r.value + 1e-4 * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
      if (step < 1e-12) break;
    }
    if (!accepted) {
      // No further decrease is representable; accept if nearly stationary.
      r.converged = r.grad.lpNorm<Eigen::Infinity>() < 1e3 * tolerance;
      break;
    }
    const Eigen::VectorXd s = candidate - r.point;
    const Eigen::VectorXd y = candidate_grad - r.grad;
    const double sy = s.dot(y);
    if (sy > 1e-12 * s.norm() * y.norm()) {
      if (r.iterations == 0) {
        // Rescale the initial approximation once curvature is known.
        inverse_hessian *= sy / y.dot(inverse_hessian * y);
      }
      const double rho = 1.0 / sy;
      const Eigen::MatrixXd identity =
          Eigen::MatrixXd::Identity(s.size(), s.size());
      inverse_hessian = (identity - rho * s * y.transpose()) * inverse_hessian *
                            (identity - rho * y * s.transpose()) +
                        rho * s * s.transpose();
    }
    r.point = candidate;
    r.value = candidate_value;
    r.grad = candidate_grad;
    ++r.iterations;
    log_step();
  }
  if (!r.converged && r.grad.lpNorm<Eigen::Infinity>() < tolerance) r.converged = true;
  return r;
}

double LogSumExp(const std::vector<double>& values) {
  const double top = *std::max_element(values.begin(), values.end());
  double sum = 0.0;
  for (double v : values) sum += std::exp(v - top);
  return top + std::log(sum);
}

}  // namespace

MarginalLogLik::MarginalLogLik(const DesignMatrix& design, int quadrature_nodes)
    : design_(design), rule_(MakeGaussHermiteRule(quadrature_nodes)) {
  group_rows_.resize(design_.group_names.size());
  for (Eigen::Index i = 0; i < design_.rows(); ++i) {
    group_rows_[design_.group[i]].push_back(i);
  }
}

double MarginalLogLik::operator()(const Eigen::VectorXd& beta,
                                  double theta) const {
  return Evaluate(beta, theta, false).loglik;
}

MarginalLogLik::Value MarginalLogLik::Evaluate(const Eigen::VectorXd& beta,
                                               double theta,
                                               bool with_gradient) const {
  const Eigen::VectorXd eta = design_.x * beta;
  const Eigen::VectorXd& y = design_.y;
  const int nodes = static_cast<int>(rule_.nodes.size());
  const Eigen::Index p = design_.cols();

  Value out;
  out.modes.assign(group_rows_.size(), 0.0);
  if (with_gradient) out.grad_beta = Eigen::VectorXd::Zero(p);

  std::vector<double> terms(nodes), abscissae(nodes);
  std::vector<Eigen::VectorXd> scores;
  std::vector<double> theta_scores(nodes);
  if (with_gradient) scores.assign(nodes, Eigen::VectorXd::Zero(p));

  for (std::size_t g = 0; g < group_rows_.size(); ++g) {
    const auto& rows = group_rows_[g];
    // log integrand without the normal constant: h(v) = sum loglik - v^2/2.
    auto h = [&](double v) {
      double sum = -0.5 * v * v;
      for (Eigen::Index i : rows) {
        const double e = eta[i] + theta * v;
        sum += y[i] * e - Log1pExp(e);
      }
      return sum;
    };

    // Newton ascent on the strictly concave h.
    double v = 0.0;
    double hv = h(v);
    double curvature = 1.0;
    for (int it = 0; it < 100; ++it) {
      double s1 = 0.0, s2 = 0.0;
      for (Eigen::Index i : rows) {
        const double mu = InverseLogit(eta[i] + theta * v);
        s1 += y[i] - mu;
        s2 += mu * (1.0 - mu);
      }
      const double grad = theta * s1 - v;
      curvature = theta * theta * s2 + 1.0;
      double step = grad / curvature;
      if (std::abs(step) < 1e-12 * (1.0 + std::abs(v))) break;
      double next = v + step, h_next = h(next);
      for (int halving = 0; halving < 30 && h_next < hv; ++halving) {
        step *= 0.5;
        next = v + step;
        h_next = h(next);
      }
      if (h_next < hv) break;
      v = next;
      hv = h_next;
    }
    {
      double s2 = 0.0;
      for (Eigen::Index i : rows) {
        const double mu = InverseLogit(eta[i] + theta * v);
        s2 += mu * (1.0 - mu);
      }
      curvature = theta * theta * s2 + 1.0;
    }
    out.modes[g] = v;
    const double scale = std::sqrt(2.0 / curvature);  // sqrt(2) * sd

    for (int k = 0; k < nodes; ++k) {
      const double z = v + scale * rule_.nodes[k];
      abscissae[k] = z;
      double sum = -0.5 * z * z;
      if (with_gradient) {
        scores[k].setZero();
        theta_scores[k] = 0.0;
      }
      for (Eigen::Index i : rows) {
        const double e = eta[i] + theta * z;
        sum += y[i] * e - Log1pExp(e);
        if (with_gradient) {
          const double residual = y[i] - InverseLogit(e);
          scores[k] += residual * design_.x.row(i).transpose();
          theta_scores[k] += residual * z;
        }
      }
      terms[k] = rule_.log_weight_plus_x2[k] + sum;
    }
    const double lse = LogSumExp(terms);
    out.loglik += std::log(scale) - kLogSqrt2Pi + lse;
    if (with_gradient) {
      for (int k = 0; k < nodes; ++k) {
        const double weight = std::exp(terms[k] - lse);
        out.grad_beta += weight * scores[k];
        out.grad_theta += weight * theta_scores[k];
      }
    }
  }
  return out;
}

GlmmFit AsGlmmFit(const GlmFit& glm, const DesignMatrix& design) {
  GlmmFit fit;
  fit.columns = glm.columns;
  fit.beta = glm.beta;
  fit.theta = 0.0;
  fit.cov_beta = glm.cov;
  fit.loglik = glm.loglik;
  fit.group_names = design.group_names;
  fit.group_modes.assign(design.group_names.size(), 0.0);
  fit.converged = glm.converged;
  fit.fallback_glm = true;
  fit.theta_estimated = false;
  fit.iterations = glm.iterations;
  fit.n = glm.n;
  fit.position_scaling = glm.position_scaling;
  return fit;
}

GlmmFit FitGlmmBinomial(const DesignMatrix& design, const FitOptions& options) {
  design.Validate();
  if ((design.y.array() == design.y[0]).all()) {
    throw Error(ErrorKind::kDegenerate, "response is constant");
  }
  const GlmFit glm = FitGlmBinomial(design, options.glm);
  const Eigen::Index p = design.cols();
  const MarginalLogLik marginal(design, options.quadrature_nodes);

  if (!options.fixed_theta && design.num_groups() < 2) {
    GlmmFit fit = AsGlmmFit(glm, design);
    fit.warnings.push_back("fewer than two groups; fitted without random intercept");
    return fit;
  }

  GlmmFit fit;
  fit.columns = design.columns;
  fit.group_names = design.group_names;
  fit.n = design.rows();
  fit.position_scaling = design.position_scaling;

  if (options.fixed_theta) {
    const double theta = *options.fixed_theta;
    if (!(theta >= 0.0)) {
      throw Error(ErrorKind::kDomain, "fixed theta must be >= 0");
    }
    Objective objective = [&](const Eigen::VectorXd& beta, Eigen::VectorXd* grad) {
      const auto value = marginal.Evaluate(beta, theta, true);
      *grad = -value.grad_beta;
      return -value.loglik;
    };
    MinimizeResult r = MinimizeBfgs(objective, glm.beta, glm.cov,
                                    options.gradient_tolerance,
                                    options.max_evaluations);
    if (!r.converged) {
      std::string trace;
      for (const auto& line : r.trace) trace += "; " + line;
      throw Error(ErrorKind::kConvergence,
                  "GLMM (fixed theta) did not converge in " +
                      std::to_string(r.evaluations) + " evaluations" + trace);
    }
    fit.beta = r.point;
    fit.theta = theta;
    fit.loglik = -r.value;
    fit.converged = true;
    fit.theta_estimated = false;
    fit.iterations = r.iterations;
    fit.evaluations = r.evaluations;
    fit.gradient_norm = r.grad.lpNorm<Eigen::Infinity>();
  } else {
    // Parameters: (beta, log theta).
    Objective objective = [&](const Eigen::VectorXd& point, Eigen::VectorXd* grad) {
      const double theta = std::exp(point[p]);
      const auto value = marginal.Evaluate(point.head(p), theta, true);
      grad->head(p) = -value.grad_beta;
      (*grad)[p] = -value.grad_theta * theta;
      return -value.loglik;
    };
    const double log_floor = std::log(options.theta_degeneracy) - 4.0;
    auto drifting_to_boundary = [&](const Eigen::VectorXd& point) {
      return point[p] < log_floor;
    };

    auto run = [&](double theta0) {
      Eigen::VectorXd start(p + 1);
      start.head(p) = glm.beta;
      start[p] = std::log(theta0);
      Eigen::MatrixXd h0 = Eigen::MatrixXd::Identity(p + 1, p + 1);
      h0.topLeftCorner(p, p) = glm.cov;
      // The likelihood is flat in log theta near zero; one long step from
      // a large start can strand the search there.
      Eigen::VectorXd max_move = Eigen::VectorXd::Constant(
          p + 1, std::numeric_limits<double>::infinity());
      max_move[p] = 1.0;
      return MinimizeBfgs(objective, start, h0, options.gradient_tolerance,
                          options.max_evaluations, drifting_to_boundary, max_move);
    };

    MinimizeResult r = run(options.initial_theta);
    int evaluations = r.evaluations;
    // An interior optimum must beat the theta = 0 GLM, and a run that
    // stalled gets fresh starts before the fit is declared failed.
    for (double theta0 : {0.3, 0.1, 2.0}) {
      const bool below_glm = -r.value < glm.loglik - 1e-8 && r.point[p] >= log_floor;
      if (r.converged && !below_glm) break;
      if (!r.converged && r.point[p] < log_floor) break;
      MinimizeResult retry = run(theta0);
      evaluations += retry.evaluations;
      if ((retry.converged && !r.converged) ||
          (retry.converged == r.converged && retry.value < r.value)) {
        r = std::move(retry);
      }
    }
    const double theta = std::exp(r.point[p]);
    if (theta < options.theta_degeneracy || -r.value <= glm.loglik) {
      GlmmFit fallback = AsGlmmFit(glm, design);
      fallback.evaluations = evaluations;
      fallback.warnings.push_back(
          "random-intercept sd " + std::to_string(theta) +
          " below degeneracy threshold; refitted as GLM");
      return fallback;
    }
    if (!r.converged) {
      std::string trace;
      for (const auto& line : r.trace) trace += "; " + line;
      throw Error(ErrorKind::kConvergence,
                  "GLMM did not converge in " + std::to_string(evaluations) +
                      " evaluations" + trace);
    }
    fit.beta = r.point.head(p);
    fit.theta = theta;
    fit.loglik = -r.value;
    fit.converged = true;
    fit.theta_estimated = true;
    fit.iterations = r.iterations;
    fit.evaluations = evaluations;
    fit.gradient_norm = r.grad.lpNorm<Eigen::Infinity>();
  }

  // Conditional modes on the logit scale.
  const auto at_optimum = marginal.Evaluate(fit.beta, fit.theta, false);
  fit.group_modes.resize(at_optimum.modes.size());
  for (std::size_t g = 0; g < at_optimum.modes.size(); ++g) {
    fit.group_modes[g] = fit.theta * at_optimum.modes[g];
  }

  // Observed information by central differences of the analytic gradient in
  // (beta, theta), or beta alone when theta is pinned.
  const Eigen::Index dim = fit.theta_estimated ? p + 1 : p;
  Eigen::VectorXd x0(dim);
  x0.head(p) = fit.beta;
  if (fit.theta_estimated) x0[p] = fit.theta;
  auto gradient = [&](const Eigen::VectorXd& point) {
    const double theta = fit.theta_estimated ? point[p] : fit.theta;
    const auto value = marginal.Evaluate(point.head(p), theta, true);
    Eigen::VectorXd g(dim);
    g.head(p) = value.grad_beta;
    if (fit.theta_estimated) g[p] = value.grad_theta;
    return g;
  };
  Eigen::MatrixXd hessian(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    const double h = 1e-4 * std::max(1.0, std::abs(x0[j]));
    Eigen::VectorXd up = x0, down = x0;
    up[j] += h;
    down[j] -= h;
    hessian.col(j) = (gradient(up) - gradient(down)) / (2.0 * h);
  }
  const Eigen::MatrixXd info = -0.5 * (hessian + hessian.transpose());
  Eigen::LLT<Eigen::MatrixXd> llt(info);
  if (llt.info() == Eigen::Success) {
    const Eigen::MatrixXd inverse = llt.solve(Eigen::MatrixXd::Identity(dim, dim));
    fit.cov_beta = 0.5 * (inverse.topLeftCorner(p, p) +
                          inverse.topLeftCorner(p, p).transpose());
  } else {
    // Leave the covariance unusable; Wald tables will report the failure.
    fit.cov_beta = Eigen::MatrixXd::Constant(p, p, std::numeric_limits<double>::quiet_NaN());
    fit.warnings.push_back("observed information is not positive definite");
  }
  return fit;
}

}  // namespace gazerev::glmm
