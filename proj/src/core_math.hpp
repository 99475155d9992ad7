// Copyright (c) 2026 The lpeirl1 Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "problems.hpp"
#include "types.hpp"

namespace lpeirl1 {

/// w_i = min(p (|x_i| + eps_i)^(p-1), kWeightMax).
WeightVector compute_weights(const Vector &x, const EpsilonVector &eps,
                             const RegParams &reg);

/// y = x + alpha (x - x_prev), alpha in [0,1).
Vector extrapolate(const Vector &x, const Vector &x_prev, double alpha);

/// Minimizer of grad_y^T x + (beta/2)||x - y||^2 + lambda sum w_i |x_i|.
///
/// Separable; coordinate i is the soft threshold of z_i = y_i - grad_y_i/beta
/// at t_i = lambda w_i / beta. |z_i| == t_i maps to 0.
Vector prox_weighted_l1(const Vector &grad_y, const Vector &y,
                        const WeightVector &w, double beta, double lambda);

/// Largest distance from 0 to the subdifferential of the weighted-l1
/// subproblem at x, over all coordinates. Zero at the exact minimizer.
double prox_optimality_residual(const Vector &grad_y, const Vector &y,
                                const WeightVector &w, double beta,
                                double lambda, const Vector &x);

/// F(x, eps) = f(x) + lambda sum (|x_i| + eps_i)^p; eps entries may be 0.
double eval_F(const Vector &x, const Vector &eps, const ProblemInstance &problem);
double eval_F(const Vector &x, const EpsilonVector &eps,
              const ProblemInstance &problem);
/// F(x) = F(x, 0).
double eval_F(const Vector &x, const ProblemInstance &problem);

/// psi(x, y, eps) = F(x, eps) + (beta/2) ||x - y||^2.
double eval_psi(const Vector &x, const Vector &y, const Vector &eps,
                double beta, const ProblemInstance &problem);
double eval_psi(const Vector &x, const Vector &y, const EpsilonVector &eps,
                double beta, const ProblemInstance &problem);

/// max over the support of |grad_i f(x) + lambda p |x_i|^(p-1) sign(x_i)|;
/// 0 for x = 0. Zero coordinates carry no finite stationarity condition.
double stationarity_residual(const Vector &x, const ProblemInstance &problem);

} // namespace lpeirl1
