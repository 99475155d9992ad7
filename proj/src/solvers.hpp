// Copyright (c) 2026 The lpeirl1 Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "problems.hpp"
#include "trace.hpp"
#include "types.hpp"

namespace lpeirl1 {

enum class SolverKind { Eirl1, Irl1, Irl2, Ijt };

std::string_view to_string(SolverKind kind);
SolverKind parse_solver_kind(std::string_view name);

/// Extrapolation coefficients alpha^k.
struct AlphaSchedule {
  enum class Kind { Constant, Nesterov };

  static AlphaSchedule constant(double value);
  static AlphaSchedule nesterov() { return AlphaSchedule{Kind::Nesterov, 0.0}; }

  /// Supremum over k; 1 for the Nesterov sequence.
  double supremum() const { return kind == Kind::Constant ? value : 1.0; }
  std::string describe() const;

  Kind kind = Kind::Constant;
  double value = 0.0;
};

/// constant(v) -> v; nesterov -> 0 at k = 0, (k-1)/(k+2) afterwards.
double alpha_at(const AlphaSchedule &schedule, long k);

enum class TraceLevel { None, Summary, Full };

std::string_view to_string(TraceLevel level);
TraceLevel parse_trace_level(std::string_view name);

struct SolverConfig {
  double beta = 1.0;
  double mu = 0.9;
  double eps0 = 1.0;
  AlphaSchedule alpha_schedule = AlphaSchedule::constant(0.9);
  double opttol = 1e-6;
  long max_iter = 5000;
  TraceLevel trace_level = TraceLevel::Full;
  /// Full-trace iterate snapshots are kept every this many iterations.
  long snapshot_stride = 50;
  /// Stationarity residual is recorded every this many iterations.
  long stationarity_stride = 50;

  /// Throws a configuration error naming the offending field.
  void validate() const;
};

/// (x^k, x^{k-1}, eps^k) at iteration k.
struct IterateState {
  static IterateState initial(const Vector &x0, double eps0);

  Vector x;
  Vector x_prev;
  EpsilonVector eps;
  long k = 0;
};

enum class TerminationReason { OpttolMet, MaxIter, NumericalFailure };

std::string_view to_string(TerminationReason reason);

struct SolveResult {
  SolverKind solver = SolverKind::Eirl1;
  Vector x_final;
  long iterations = 0;
  bool converged = false;
  TerminationReason termination_reason = TerminationReason::MaxIter;
  Trace trace;
  std::vector<std::string> warnings;
  std::string failure_message;
};

struct SolveOptions {
  /// Ground truth; when set every record carries the MSE (1/n)||x^k - x_true||^2.
  std::optional<Vector> x_true;
};

/// One pass of the reweighted l1 update:
/// w = weights(x, eps), y = x + alpha (x - x_prev),
/// x_next = prox(grad f(y), y, w), eps_next = max(mu eps, floor).
/// Throws a Numerical error if x_next is not finite.
IterateState eirl1_step(const IterateState &state, const ProblemInstance &problem,
                        const SolverConfig &config, double alpha_k);

/// Reweighted l2 update x_next = beta z / (beta + 2 lambda v), with
/// z = y - grad f(y) / beta and v_i = min((p/2)(x_i^2 + eps_i)^(p/2 - 1), cap).
IterateState irl2_step(const IterateState &state, const ProblemInstance &problem,
                       const SolverConfig &config, double alpha_k);

/// Proximal gradient step with the exact lp proximal map, step 1/beta.
/// Smoothing is left untouched.
IterateState ijt_step(const IterateState &state, const ProblemInstance &problem,
                      const SolverConfig &config);

SolveResult solve_eirl1(const ProblemInstance &problem, const Vector &x0,
                        const SolverConfig &config, const SolveOptions &options = {});
/// solve_eirl1 with the schedule forced to constant(0).
SolveResult solve_irl1(const ProblemInstance &problem, const Vector &x0,
                       const SolverConfig &config, const SolveOptions &options = {});
SolveResult solve_irl2(const ProblemInstance &problem, const Vector &x0,
                       const SolverConfig &config, const SolveOptions &options = {});
/// Requires p in {1/2, 2/3}.
SolveResult solve_ijt(const ProblemInstance &problem, const Vector &x0,
                      const SolverConfig &config, const SolveOptions &options = {});

SolveResult solve(SolverKind kind, const ProblemInstance &problem,
                  const Vector &x0, const SolverConfig &config,
                  const SolveOptions &options = {});

} // namespace lpeirl1
