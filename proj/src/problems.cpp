// Copyright (c) 2026 The lpeirl1 Authors.
// SPDX-License-Identifier: Apache-2.0

#include "problems.hpp"

#include <cmath>
#include <random>
#include <string>

#include "error.hpp"

namespace lpeirl1 {

double estimate_lipschitz(const Matrix &A, double tol, int max_iter) {
  LipschitzOptions options;
  options.tol = tol;
  options.max_iter = max_iter;
  return estimate_lipschitz(A, options);
}

double estimate_lipschitz(const Matrix &A, const LipschitzOptions &options) {
  require(options.tol > 0.0, ErrorKind::Usage, "tolerance must be positive");
  require(options.max_iter > 0, ErrorKind::Usage, "max_iter must be positive");
  require(A.size() > 0 && A.allFinite(), ErrorKind::InvalidInput,
          "matrix must be nonempty and finite");
  require(A.cwiseAbs().maxCoeff() > 0.0, ErrorKind::InvalidInput,
          "matrix must be nonzero");

  // Uniform(-1,1) start from a fixed seed: generic enough to have a
  // component along the dominant singular vector.
  std::mt19937_64 gen(options.seed);
  Vector v(A.cols());
  for (Index i = 0; i < v.size(); ++i)
    v[i] = 2.0 * (static_cast<double>(gen() >> 11) * 0x1.0p-53) - 1.0;
  v.normalize();

  double estimate = 0.0;
  for (int it = 0; it < options.max_iter; ++it) {
    Vector Av = A * v;
    Vector w = A.transpose() * Av;
    double rayleigh = Av.squaredNorm(); // v^T A^T A v with ||v|| = 1
    double wn = w.norm();
    if (wn == 0.0) {
      // v fell in the null space; restart along a coordinate axis that is not.
      Index col = 0;
      A.colwise().norm().maxCoeff(&col);
      v = Vector::Unit(A.cols(), col);
      continue;
    }
    v = w / wn;
    if (it > 0 && std::abs(rayleigh - estimate) <= options.tol * rayleigh) {
      // One more quotient at the updated vector is never smaller.
      return std::max(rayleigh, (A * v).squaredNorm());
    }
    estimate = rayleigh;
  }
  throw EstimationError("power iteration did not converge in " +
                            std::to_string(options.max_iter) + " iterations",
                        estimate);
}

LeastSquaresProblem::LeastSquaresProblem(Matrix A, Vector y)
    : A_(std::move(A)), y_(std::move(y)), lipschitz_(0.0) {
  require(A_.rows() == y_.size(), ErrorKind::Usage,
          "observation length does not match matrix rows");
  require(A_.allFinite() && y_.allFinite(), ErrorKind::InvalidInput,
          "least-squares data must be finite");
  lipschitz_ = A_.cwiseAbs().maxCoeff() > 0.0 ? estimate_lipschitz(A_) : 0.0;
}

LeastSquaresProblem::LeastSquaresProblem(Matrix A, Vector y, double lipschitz)
    : A_(std::move(A)), y_(std::move(y)), lipschitz_(lipschitz) {
  require(A_.rows() == y_.size(), ErrorKind::Usage,
          "observation length does not match matrix rows");
  require(A_.allFinite() && y_.allFinite(), ErrorKind::InvalidInput,
          "least-squares data must be finite");
  require(std::isfinite(lipschitz) && lipschitz >= 0.0, ErrorKind::InvalidInput,
          "Lipschitz constant must be finite and >= 0");
}

Vector LeastSquaresProblem::residual(const Vector &x) const {
  require(x.size() == A_.cols(), ErrorKind::Usage, "dimension mismatch");
  return A_ * x - y_;
}

double LeastSquaresProblem::value(const Vector &x) const {
  return 0.5 * residual(x).squaredNorm();
}

Vector LeastSquaresProblem::gradient(const Vector &x) const {
  return A_.transpose() * residual(x);
}

double grad_check(const SmoothTerm &term, const Vector &x, double h) {
  require(h > 0.0, ErrorKind::Usage, "finite-difference step must be positive");
  require(x.size() == term.dimension(), ErrorKind::Usage, "dimension mismatch");
  const Vector g = term.gradient(x);
  Vector probe = x;
  double worst = 0.0;
  for (Index i = 0; i < x.size(); ++i) {
    probe[i] = x[i] + h;
    const double fp = term.value(probe);
    probe[i] = x[i] - h;
    const double fm = term.value(probe);
    probe[i] = x[i];
    worst = std::max(worst, std::abs((fp - fm) / (2.0 * h) - g[i]));
  }
  return worst;
}

ProblemInstance::ProblemInstance(std::shared_ptr<const SmoothTerm> smooth_,
                                 RegParams reg_)
    : smooth(std::move(smooth_)), reg(reg_) {
  require(smooth != nullptr, ErrorKind::Usage, "smooth term is null");
}

} // namespace lpeirl1
