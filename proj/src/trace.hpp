// Copyright (c) 2026 The lpeirl1 Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "types.hpp"

namespace lpeirl1 {

/// One row of a solve trace, describing iterate x^k.
struct IterationRecord {
  long k = 0;
  double F_eps = 0.0;     // F(x^k, eps^k)
  double psi = 0.0;       // psi(x^k, x^{k-1}, eps^k)
  double step_norm = 0.0; // ||x^k - x^{k-1}||
  double rel_step = 0.0;  // step_norm / ||x^k||, or step_norm when x^k = 0
  long support_size = 0;
  std::uint64_t support_hash = 0;
  std::uint64_t sign_hash = 0;
  double min_abs_nonzero = 0.0; // smallest |x_i| on the support, 0 if empty
  double eps_norm1 = 0.0;
  std::optional<double> stationarity;
  std::optional<double> mse;
};

struct Snapshot {
  long k = 0;
  Vector x;
};

struct Trace {
  std::vector<IterationRecord> records;
  /// Full iterates at a fixed stride and at termination.
  std::vector<Snapshot> snapshots;

  bool empty() const noexcept { return records.empty(); }
};

/// FNV-1a over the {-1,0,+1} bytes of sign(x).
std::uint64_t sign_digest(const SignPattern &signs);
/// FNV-1a over the {0,1} support indicator bytes.
std::uint64_t support_digest(const SignPattern &signs);

} // namespace lpeirl1
