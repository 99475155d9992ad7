// Copyright (c) 2026 The lpeirl1 Authors.
// SPDX-License-Identifier: Apache-2.0

#include "core_math.hpp"

#include <cmath>
#include <string>

#include "error.hpp"

namespace lpeirl1 {

namespace {

void require_same_size(Index a, Index b, const char *what) {
  require(a == b, ErrorKind::Usage,
          std::string("dimension mismatch: ") + what + " (" + std::to_string(a) +
              " vs " + std::to_string(b) + ")");
}

void require_finite(const Vector &v, const char *what) {
  require(v.allFinite(), ErrorKind::InvalidInput,
          std::string(what) + " contains non-finite entries");
}

double sign(double v) { return static_cast<double>((v > 0.0) - (v < 0.0)); }

} // namespace

WeightVector compute_weights(const Vector &x, const EpsilonVector &eps,
                             const RegParams &reg) {
  require_same_size(x.size(), eps.size(), "x and eps");
  require_finite(x, "x");
  Vector w(x.size());
  for (Index i = 0; i < x.size(); ++i)
    w[i] = std::min(reg.p * std::pow(std::abs(x[i]) + eps[i], reg.p - 1.0),
                    kWeightMax);
  return WeightVector(std::move(w));
}

Vector extrapolate(const Vector &x, const Vector &x_prev, double alpha) {
  require(alpha >= 0.0 && alpha < 1.0, ErrorKind::Config,
          "extrapolation coefficient must lie in [0,1), got " +
              std::to_string(alpha));
  require_same_size(x.size(), x_prev.size(), "x and x_prev");
  return x + alpha * (x - x_prev);
}

Vector prox_weighted_l1(const Vector &grad_y, const Vector &y,
                        const WeightVector &w, double beta, double lambda) {
  require(beta > 0.0 && std::isfinite(beta), ErrorKind::Config,
          "beta must be positive");
  require(lambda > 0.0 && std::isfinite(lambda), ErrorKind::Config,
          "lambda must be positive");
  require_same_size(grad_y.size(), y.size(), "gradient and y");
  require_same_size(w.size(), y.size(), "weights and y");
  require_finite(grad_y, "gradient");
  require_finite(y, "y");

  Vector x(y.size());
  for (Index i = 0; i < y.size(); ++i) {
    const double z = y[i] - grad_y[i] / beta;
    const double t = lambda * w[i] / beta;
    x[i] = sign(z) * std::max(std::abs(z) - t, 0.0);
  }
  return x;
}

double prox_optimality_residual(const Vector &grad_y, const Vector &y,
                                const WeightVector &w, double beta,
                                double lambda, const Vector &x) {
  require_same_size(grad_y.size(), y.size(), "gradient and y");
  require_same_size(w.size(), y.size(), "weights and y");
  require_same_size(x.size(), y.size(), "x and y");
  double worst = 0.0;
  for (Index i = 0; i < x.size(); ++i) {
    const double smooth = grad_y[i] + beta * (x[i] - y[i]);
    const double radius = lambda * w[i];
    const double r = x[i] != 0.0 ? std::abs(smooth + radius * sign(x[i]))
                                 : std::max(std::abs(smooth) - radius, 0.0);
    worst = std::max(worst, r);
  }
  return worst;
}

double eval_F(const Vector &x, const Vector &eps, const ProblemInstance &problem) {
  require_same_size(x.size(), problem.dimension(), "x and problem");
  require_same_size(x.size(), eps.size(), "x and eps");
  require((eps.array() >= 0.0).all(), ErrorKind::InvalidInput,
          "eps entries must be >= 0");
  double reg = 0.0;
  for (Index i = 0; i < x.size(); ++i)
    reg += std::pow(std::abs(x[i]) + eps[i], problem.reg.p);
  return problem.smooth->value(x) + problem.reg.lambda * reg;
}

double eval_F(const Vector &x, const EpsilonVector &eps,
              const ProblemInstance &problem) {
  return eval_F(x, eps.values(), problem);
}

double eval_F(const Vector &x, const ProblemInstance &problem) {
  return eval_F(x, Vector::Zero(x.size()), problem);
}

double eval_psi(const Vector &x, const Vector &y, const Vector &eps,
                double beta, const ProblemInstance &problem) {
  require_same_size(x.size(), y.size(), "x and y");
  return eval_F(x, eps, problem) + 0.5 * beta * (x - y).squaredNorm();
}

double eval_psi(const Vector &x, const Vector &y, const EpsilonVector &eps,
                double beta, const ProblemInstance &problem) {
  return eval_psi(x, y, eps.values(), beta, problem);
}

double stationarity_residual(const Vector &x, const ProblemInstance &problem) {
  require_same_size(x.size(), problem.dimension(), "x and problem");
  require_finite(x, "x");
  if ((x.array() == 0.0).all())
    return 0.0;
  const Vector g = problem.smooth->gradient(x);
  const double lp = problem.reg.lambda * problem.reg.p;
  double worst = 0.0;
  for (Index i = 0; i < x.size(); ++i) {
    if (x[i] == 0.0)
      continue;
    const double r =
        g[i] + lp * std::pow(std::abs(x[i]), problem.reg.p - 1.0) * sign(x[i]);
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

} // namespace lpeirl1
