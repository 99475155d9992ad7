// Copyright (c) 2026 The lpeirl1 Authors.
// SPDX-License-Identifier: Apache-2.0

#include "types.hpp"

#include <cmath>
#include <string>

#include "error.hpp"

namespace lpeirl1 {

const char *to_string(ErrorKind kind) {
  switch (kind) {
  case ErrorKind::Usage:
    return "usage error";
  case ErrorKind::Config:
    return "configuration error";
  case ErrorKind::InvalidInput:
    return "invalid input";
  case ErrorKind::Specification:
    return "specification error";
  case ErrorKind::Estimation:
    return "estimation error";
  case ErrorKind::Numerical:
    return "numerical failure";
  case ErrorKind::Io:
    return "I/O error";
  }
  return "error";
}

RegParams::RegParams(double p_, double lambda_) : p(p_), lambda(lambda_) {
  require(std::isfinite(p) && p > 0.0 && p < 1.0, ErrorKind::Config,
          "p must lie in (0,1), got " + std::to_string(p));
  require(std::isfinite(lambda) && lambda > 0.0, ErrorKind::Config,
          "lambda must be positive, got " + std::to_string(lambda));
}

EpsilonVector::EpsilonVector(Vector values) : values_(std::move(values)) {
  for (Index i = 0; i < values_.size(); ++i) {
    require(std::isfinite(values_[i]), ErrorKind::InvalidInput,
            "epsilon entry " + std::to_string(i) + " is not finite");
    require(values_[i] >= kEpsFloor, ErrorKind::InvalidInput,
            "epsilon entry " + std::to_string(i) + " is below the floor");
  }
}

EpsilonVector EpsilonVector::uniform(Index n, double value) {
  require(value > 0.0, ErrorKind::Config, "initial epsilon must be positive");
  return EpsilonVector(Vector::Constant(n, std::max(value, kEpsFloor)));
}

EpsilonVector EpsilonVector::decayed(double mu) const {
  return EpsilonVector((mu * values_.array()).max(kEpsFloor).matrix());
}

WeightVector::WeightVector(Vector values) : values_(std::move(values)) {
  for (Index i = 0; i < values_.size(); ++i)
    require(std::isfinite(values_[i]) && values_[i] >= 0.0,
            ErrorKind::InvalidInput,
            "weight entry " + std::to_string(i) + " must be finite and >= 0");
}

SignPattern sign_pattern(const Vector &x) {
  SignPattern s(static_cast<std::size_t>(x.size()));
  for (Index i = 0; i < x.size(); ++i)
    s[static_cast<std::size_t>(i)] =
        static_cast<std::int8_t>((x[i] > 0.0) - (x[i] < 0.0));
  return s;
}

} // namespace lpeirl1
