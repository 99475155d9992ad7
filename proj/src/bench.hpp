// Copyright (c) 2026 The lpeirl1 Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "solvers.hpp"
#include "types.hpp"

namespace lpeirl1 {

/// Offset between an instance seed and the seed of its starting point.
inline constexpr std::uint64_t kStartSeedOffset = 1000003;

/// Sparse recovery instance y = A x_true + noise, A with orthonormal rows.
struct Instance {
  Matrix A;
  Vector x_true;
  Vector y;
  std::uint64_t seed = 0;
  double sigma2 = 0.0;
  Index sparsity = 0;
};

/// Deterministic in seed. A is an m x n standard Gaussian matrix with its
/// rows orthonormalized (thin QR of A^T); x_true has K entries +-1 at
/// uniformly drawn positions; noise is i.i.d. N(0, sigma2).
Instance generate_instance(Index m, Index n, Index K, double sigma2,
                           std::uint64_t seed);

/// Standard Gaussian starting point drawn from seed + kStartSeedOffset.
Vector initial_point(Index n, std::uint64_t instance_seed);

struct SolverEntry {
  SolverKind kind = SolverKind::Eirl1;
  SolverConfig config;
  std::string label;
};

/// Default label: solver name plus the alpha schedule for extrapolating
/// solvers, e.g. "eirl1(alpha=0.9)".
std::string default_label(SolverKind kind, const SolverConfig &config);

struct ExperimentSpec {
  Index m = 256;
  Index n = 512;
  Index K = 25;
  double sigma2 = 1e-4;
  RegParams reg{0.5, 0.05};
  std::vector<SolverEntry> solver_set;
  long trials = 20;
  std::uint64_t base_seed = 0;

  /// Throws a Specification error naming the field (K > n, m >= n, ...).
  void validate() const;
};

struct TrialSummary {
  std::uint64_t seed = 0;
  std::string solver_id;
  long iterations = 0;
  bool converged = false;
  TerminationReason termination = TerminationReason::MaxIter;
  double final_mse = 0.0;
  long final_support_size = 0;
  long invariant_violations = 0;
  double wall_time = 0.0; // seconds; excluded from serialized output
};

struct Quartiles {
  double min = 0.0, q1 = 0.0, median = 0.0, q3 = 0.0, max = 0.0;
};

/// Linear-interpolation quartiles (Hyndman-Fan type 7).
Quartiles quartiles(std::vector<double> values);
double median(std::vector<double> values);

struct SolverStats {
  std::string solver_id;
  std::vector<double> mean_mse_curve;
  std::vector<double> median_mse_curve;
  Quartiles support;
  double median_iterations = 0.0;
  double mean_iterations = 0.0;
  double mean_final_support = 0.0;
  double mean_final_mse = 0.0;
  long converged = 0;
  long failures = 0;
  long invariant_violations = 0;
};

struct AggregateStats {
  std::vector<SolverStats> solvers; // solver_set order
};

struct ExperimentResult {
  std::vector<TrialSummary> summaries; // trial-major, solver_set order within
  AggregateStats stats;
};

/// Runs every solver on each trial's instance and shared starting point.
/// Trials run on up to `threads` workers; results are reduced in trial order.
ExperimentResult run_experiment(const ExperimentSpec &spec, unsigned threads = 1);

struct AlphaSweepEntry {
  AlphaSchedule alpha;
  ExperimentResult result;
};

/// One EIRL1 experiment per alpha with identical seeds. The base solver
/// configuration is the first entry of spec.solver_set (defaults if empty).
std::vector<AlphaSweepEntry> alpha_sweep(const ExperimentSpec &spec,
                                         const std::vector<AlphaSchedule> &alphas,
                                         unsigned threads = 1);

} // namespace lpeirl1
