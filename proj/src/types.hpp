// Copyright (c) 2026 The lpeirl1 Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace lpeirl1 {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

/// Lower bound applied to every smoothing entry. Keeps p(|x|+eps)^(p-1)
/// finite once mu^k underflows.
inline constexpr double kEpsFloor = 1e-150;

/// Cap on reweighting entries so lambda*w/beta stays representable.
inline constexpr double kWeightMax = 1e15;

/// Regularization of F(x) = f(x) + lambda * sum |x_i|^p, 0 < p < 1.
struct RegParams {
  RegParams(double p, double lambda);

  double p;
  double lambda;
};

/// Strictly positive smoothing vector, every entry >= kEpsFloor.
class EpsilonVector {
public:
  explicit EpsilonVector(Vector values);

  static EpsilonVector uniform(Index n, double value);

  /// max(mu * eps, kEpsFloor) elementwise.
  EpsilonVector decayed(double mu) const;

  const Vector &values() const noexcept { return values_; }
  Index size() const noexcept { return values_.size(); }
  double operator[](Index i) const { return values_[i]; }

private:
  Vector values_;
};

/// Nonnegative finite reweighting coefficients.
class WeightVector {
public:
  explicit WeightVector(Vector values);

  const Vector &values() const noexcept { return values_; }
  Index size() const noexcept { return values_.size(); }
  double operator[](Index i) const { return values_[i]; }

private:
  Vector values_;
};

/// Entries in {-1, 0, +1}; sign(0) = 0.
using SignPattern = std::vector<std::int8_t>;

SignPattern sign_pattern(const Vector &x);

} // namespace lpeirl1
