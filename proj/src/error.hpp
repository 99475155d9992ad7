// Copyright (c) 2026 The lpeirl1 Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace lpeirl1 {

enum class ErrorKind {
  Usage,         // caller violated a documented precondition (dimensions, arguments)
  Config,        // solver or experiment configuration out of range
  InvalidInput,  // non-finite or malformed data
  Specification, // experiment specification cannot be realized (K > n, m >= n)
  Estimation,    // an iterative estimate failed to converge
  Numerical,     // a solver produced a non-finite iterate
  Io,
};

const char *to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string &message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

/// Power iteration did not settle; carries the last Rayleigh quotient.
class EstimationError : public Error {
public:
  EstimationError(const std::string &message, double last_estimate)
      : Error(ErrorKind::Estimation, message), last_estimate_(last_estimate) {}

  double last_estimate() const noexcept { return last_estimate_; }

private:
  double last_estimate_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string &message) {
  throw Error(kind, message);
}

inline void require(bool condition, ErrorKind kind, const std::string &message) {
  if (!condition)
    throw Error(kind, message);
}

} // namespace lpeirl1
