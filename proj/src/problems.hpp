// Copyright (c) 2026 The lpeirl1 Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <memory>

#include "types.hpp"

namespace lpeirl1 {

/// Lipschitz-smooth loss f. Implementations must be safe for concurrent
/// const evaluation.
class SmoothTerm {
public:
  virtual ~SmoothTerm() = default;

  virtual double value(const Vector &x) const = 0;
  virtual Vector gradient(const Vector &x) const = 0;
  virtual double lipschitz_constant() const = 0;
  virtual Index dimension() const = 0;
};

struct LipschitzOptions {
  double tol = 1e-10;
  int max_iter = 5000;
  std::uint64_t seed = 0x5eed;
};

/// Largest squared singular value of A by power iteration on A^T A.
/// Throws EstimationError (carrying the last estimate) when the relative
/// change has not dropped below tol after max_iter products.
double estimate_lipschitz(const Matrix &A, double tol = 1e-10,
                          int max_iter = 5000);
double estimate_lipschitz(const Matrix &A, const LipschitzOptions &options);

/// f(x) = 0.5 * ||A x - y||^2.
class LeastSquaresProblem final : public SmoothTerm {
public:
  LeastSquaresProblem(Matrix A, Vector y);
  /// Skips power iteration when the constant is already known.
  LeastSquaresProblem(Matrix A, Vector y, double lipschitz);

  double value(const Vector &x) const override;
  Vector gradient(const Vector &x) const override;
  double lipschitz_constant() const override { return lipschitz_; }
  Index dimension() const override { return A_.cols(); }

  /// Residual A x - y; shared by value and gradient callers that need both.
  Vector residual(const Vector &x) const;

  const Matrix &matrix() const noexcept { return A_; }
  const Vector &observations() const noexcept { return y_; }

private:
  Matrix A_;
  Vector y_;
  double lipschitz_;
};

/// Max over coordinates of |central difference - gradient_i| with step h.
double grad_check(const SmoothTerm &term, const Vector &x, double h = 1e-6);

struct ProblemInstance {
  ProblemInstance(std::shared_ptr<const SmoothTerm> smooth, RegParams reg);

  Index dimension() const { return smooth->dimension(); }

  std::shared_ptr<const SmoothTerm> smooth;
  RegParams reg;
};

} // namespace lpeirl1
