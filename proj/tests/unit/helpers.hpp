// Copyright (c) 2026 The lpeirl1 Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>

#include "../generators.hpp"
#include "problems.hpp"
#include "types.hpp"

namespace testing {

using lpeirl1::Index;
using lpeirl1::Matrix;
using lpeirl1::Vector;

/// f = 0 in any dimension.
class ZeroTerm final : public lpeirl1::SmoothTerm {
public:
  explicit ZeroTerm(Index n) : n_(n) {}
  double value(const Vector &) const override { return 0.0; }
  Vector gradient(const Vector &) const override { return Vector::Zero(n_); }
  double lipschitz_constant() const override { return 0.0; }
  Index dimension() const override { return n_; }

private:
  Index n_;
};

inline lpeirl1::ProblemInstance zero_problem(Index n, double p, double lambda) {
  return lpeirl1::ProblemInstance(std::make_shared<ZeroTerm>(n), lpeirl1::RegParams(p, lambda));
}

/// f(x) = (1/2)||x - a||^2.
inline lpeirl1::ProblemInstance shifted_identity(const Vector &a, double p, double lambda) {
  const Index n = a.size();
  return lpeirl1::ProblemInstance(
      std::make_shared<lpeirl1::LeastSquaresProblem>(Matrix::Identity(n, n), a, 1.0),
      lpeirl1::RegParams(p, lambda));
}

inline Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Index>(v.size()));
  Index i = 0;
  for (double x : v)
    out[i++] = x;
  return out;
}

inline Vector random_vector(gen::Source &src, Index n) {
  Vector v(n);
  for (Index i = 0; i < n; ++i)
    v[i] = src.normal();
  return v;
}

inline Matrix random_matrix(gen::Source &src, Index m, Index n) {
  Matrix A(m, n);
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < n; ++j)
      A(i, j) = src.normal();
  return A;
}

} // namespace testing
