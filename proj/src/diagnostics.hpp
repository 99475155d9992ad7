// Copyright (c) 2026 The lpeirl1 Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <vector>

#include "trace.hpp"
#include "types.hpp"

namespace lpeirl1 {

struct PsiViolation {
  long k = 0;
  double decrease = 0.0; // psi_k - psi_{k+1}
  double required = 0.0; // (beta/2)(1 - alpha_bar^2) step_norm_k^2
};

/// Every k where psi_k - psi_{k+1} < (beta/2)(1 - alpha_bar^2) step_norm_k^2
/// - 1e-8 (1 + |psi_k|). Throws a usage error on traces shorter than two.
std::vector<PsiViolation> check_psi_decrease(const Trace &trace, double beta,
                                             double alpha_bar);

struct StabilizationReport {
  std::optional<long> support_stable_from;
  std::optional<long> sign_stable_from;
  /// Smallest nonzero magnitude over records from sign_stable_from on;
  /// 0 when signs never settle or the stable support is empty.
  double min_nonzero_magnitude_after_stable = 0.0;
};

/// First k after which support (resp. sign pattern) never changes again.
/// None when the last recorded step still changed it.
StabilizationReport detect_stabilization(const Trace &trace);

/// Sum of step_norm over records with k >= from_k.
double tail_sum(const Trace &trace, long from_k);

struct RateFit {
  std::optional<double> gamma_hat; // exp(slope), present only inside (0,1)
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  double tail_fraction = 0.0;
  long points = 0;
};

/// Least-squares line through (k, log d_k) for points in the trailing
/// tail_fraction of the k-range that also lie at or after min_k; distances
/// below 1e-14 are dropped. Fewer than five points leaves gamma_hat empty.
RateFit fit_log_linear(const std::vector<long> &ks,
                       const std::vector<double> &distances,
                       double tail_fraction, long min_k = 0);

/// Rate of ||x^k - x_ref|| over the trace's snapshots, restricted to the
/// post sign-stabilization tail.
RateFit fit_rate(const Trace &trace, const Vector &x_ref, double tail_fraction);

/// Rate of the step norms ||x^k - x^{k-1}|| over the post-stabilization
/// tail. Needs no reference point, so it also works on traces read from disk.
RateFit fit_step_rate(const Trace &trace, double tail_fraction);

} // namespace lpeirl1
