// Copyright (c) 2026 The lpeirl1 Authors.
// SPDX-License-Identifier: Apache-2.0

#include "solvers.hpp"

#include <cmath>
#include <sstream>

#include "core_math.hpp"
#include "error.hpp"
#include "thresholding.hpp"

namespace lpeirl1 {

std::string_view to_string(SolverKind kind) {
  switch (kind) {
  case SolverKind::Eirl1:
    return "eirl1";
  case SolverKind::Irl1:
    return "irl1";
  case SolverKind::Irl2:
    return "irl2";
  case SolverKind::Ijt:
    return "ijt";
  }
  return "unknown";
}

SolverKind parse_solver_kind(std::string_view name) {
  if (name == "eirl1")
    return SolverKind::Eirl1;
  if (name == "irl1")
    return SolverKind::Irl1;
  if (name == "irl2")
    return SolverKind::Irl2;
  if (name == "ijt")
    return SolverKind::Ijt;
  fail(ErrorKind::Config, "solver: unknown solver '" + std::string(name) +
                              "' (expected eirl1, irl1, irl2 or ijt)");
}

AlphaSchedule AlphaSchedule::constant(double value) {
  require(std::isfinite(value) && value >= 0.0 && value < 1.0, ErrorKind::Config,
          "alpha: constant extrapolation must lie in [0,1), got " +
              std::to_string(value));
  return AlphaSchedule{Kind::Constant, value};
}

std::string AlphaSchedule::describe() const {
  if (kind == Kind::Nesterov)
    return "nesterov";
  std::ostringstream os;
  os << value;
  return os.str();
}

double alpha_at(const AlphaSchedule &schedule, long k) {
  require(k >= 0, ErrorKind::Usage, "iteration index must be >= 0");
  if (schedule.kind == AlphaSchedule::Kind::Constant)
    return schedule.value;
  if (k == 0)
    return 0.0;
  return static_cast<double>(k - 1) / static_cast<double>(k + 2);
}

std::string_view to_string(TraceLevel level) {
  switch (level) {
  case TraceLevel::None:
    return "none";
  case TraceLevel::Summary:
    return "summary";
  case TraceLevel::Full:
    return "full";
  }
  return "unknown";
}

TraceLevel parse_trace_level(std::string_view name) {
  if (name == "none")
    return TraceLevel::None;
  if (name == "summary")
    return TraceLevel::Summary;
  if (name == "full")
    return TraceLevel::Full;
  fail(ErrorKind::Config, "trace: expected none, summary or full, got '" +
                              std::string(name) + "'");
}

std::string_view to_string(TerminationReason reason) {
  switch (reason) {
  case TerminationReason::OpttolMet:
    return "opttol_met";
  case TerminationReason::MaxIter:
    return "max_iter";
  case TerminationReason::NumericalFailure:
    return "numerical_failure";
  }
  return "unknown";
}

void SolverConfig::validate() const {
  require(std::isfinite(beta) && beta > 0.0, ErrorKind::Config,
          "beta: must be positive");
  require(std::isfinite(mu) && mu > 0.0 && mu < 1.0, ErrorKind::Config,
          "mu: must lie in (0,1)");
  require(std::isfinite(eps0) && eps0 > 0.0, ErrorKind::Config,
          "eps0: must be positive");
  require(std::isfinite(opttol) && opttol > 0.0, ErrorKind::Config,
          "opttol: must be positive");
  require(max_iter > 0, ErrorKind::Config, "max_iter: must be positive");
  require(snapshot_stride > 0, ErrorKind::Config,
          "snapshot_stride: must be positive");
  require(stationarity_stride > 0, ErrorKind::Config,
          "stationarity_stride: must be positive");
  if (alpha_schedule.kind == AlphaSchedule::Kind::Constant)
    require(alpha_schedule.value >= 0.0 && alpha_schedule.value < 1.0,
            ErrorKind::Config, "alpha: must lie in [0,1)");
}

IterateState IterateState::initial(const Vector &x0, double eps0) {
  return IterateState{x0, x0, EpsilonVector::uniform(x0.size(), eps0), 0};
}

namespace {

void require_finite_iterate(const Vector &x, const char *method, long k) {
  if (!x.allFinite())
    fail(ErrorKind::Numerical, std::string(method) +
                                   ": non-finite iterate produced at k = " +
                                   std::to_string(k + 1));
}

void require_finite_gradient(const Vector &g, const char *method, long k) {
  if (!g.allFinite())
    fail(ErrorKind::Numerical, std::string(method) +
                                   ": non-finite gradient at k = " + std::to_string(k));
}

} // namespace

IterateState eirl1_step(const IterateState &state, const ProblemInstance &problem,
                        const SolverConfig &config, double alpha_k) {
  const WeightVector w = compute_weights(state.x, state.eps, problem.reg);
  const Vector y = extrapolate(state.x, state.x_prev, alpha_k);
  const Vector grad_y = problem.smooth->gradient(y);
  require_finite_gradient(grad_y, "eirl1", state.k);
  Vector x_next =
      prox_weighted_l1(grad_y, y, w, config.beta, problem.reg.lambda);
  require_finite_iterate(x_next, "eirl1", state.k);
  return IterateState{std::move(x_next), state.x, state.eps.decayed(config.mu),
                      state.k + 1};
}

IterateState irl2_step(const IterateState &state, const ProblemInstance &problem,
                       const SolverConfig &config, double alpha_k) {
  const double p = problem.reg.p;
  const double lambda = problem.reg.lambda;
  const double beta = config.beta;
  const Vector y = extrapolate(state.x, state.x_prev, alpha_k);
  const Vector grad_y = problem.smooth->gradient(y);
  require_finite_gradient(grad_y, "irl2", state.k);
  Vector x_next(y.size());
  for (Index i = 0; i < y.size(); ++i) {
    const double xi = state.x[i];
    const double v = std::min(
        0.5 * p * std::pow(xi * xi + state.eps[i], 0.5 * p - 1.0), kWeightMax);
    const double z = y[i] - grad_y[i] / beta;
    x_next[i] = beta * z / (beta + 2.0 * lambda * v);
  }
  require_finite_iterate(x_next, "irl2", state.k);
  return IterateState{std::move(x_next), state.x, state.eps.decayed(config.mu),
                      state.k + 1};
}

IterateState ijt_step(const IterateState &state, const ProblemInstance &problem,
                      const SolverConfig &config) {
  const double p = problem.reg.p;
  require(lp_prox_supported(p), ErrorKind::Config,
          "p: ijt requires p = 1/2 or p = 2/3, got " + std::to_string(p));
  const double mu = problem.reg.lambda / config.beta;
  const Vector grad = problem.smooth->gradient(state.x);
  require_finite_gradient(grad, "ijt", state.k);
  Vector x_next(state.x.size());
  for (Index i = 0; i < x_next.size(); ++i)
    x_next[i] = lp_prox(state.x[i] - grad[i] / config.beta, mu, p);
  require_finite_iterate(x_next, "ijt", state.k);
  return IterateState{std::move(x_next), state.x, state.eps, state.k + 1};
}

namespace {

struct RunContext {
  SolverKind kind;
  const ProblemInstance &problem;
  const SolverConfig &config;
  const SolveOptions &options;

  bool smoothed() const { return kind != SolverKind::Ijt; }
};

IterationRecord make_record(const RunContext &ctx, const IterateState &state,
                            bool with_stationarity) {
  IterationRecord r;
  r.k = state.k;
  const double step = (state.x - state.x_prev).norm();
  const double xnorm = state.x.norm();
  r.step_norm = step;
  r.rel_step = xnorm > 0.0 ? step / xnorm : step;

  if (ctx.smoothed()) {
    r.F_eps = eval_F(state.x, state.eps, ctx.problem);
    r.eps_norm1 = state.eps.values().sum();
  } else {
    r.F_eps = eval_F(state.x, ctx.problem);
    r.eps_norm1 = 0.0;
  }
  r.psi = r.F_eps + 0.5 * ctx.config.beta * step * step;

  const SignPattern signs = sign_pattern(state.x);
  r.sign_hash = sign_digest(signs);
  r.support_hash = support_digest(signs);
  double min_abs = 0.0;
  long support = 0;
  for (Index i = 0; i < state.x.size(); ++i) {
    const double a = std::abs(state.x[i]);
    if (a == 0.0)
      continue;
    min_abs = support == 0 ? a : std::min(min_abs, a);
    ++support;
  }
  r.support_size = support;
  r.min_abs_nonzero = min_abs;

  if (with_stationarity)
    r.stationarity = stationarity_residual(state.x, ctx.problem);
  if (ctx.options.x_true)
    r.mse = (state.x - *ctx.options.x_true).squaredNorm() /
            static_cast<double>(state.x.size());
  return r;
}

bool stopping_rule_met(const IterateState &state, double opttol) {
  const double step = (state.x - state.x_prev).norm();
  const double xnorm = state.x.norm();
  if (xnorm == 0.0)
    return step <= opttol;
  return step / xnorm <= opttol;
}

SolveResult run(const RunContext &ctx, const Vector &x0) {
  const auto &config = ctx.config;
  const auto &problem = ctx.problem;
  config.validate();
  require(x0.size() == problem.dimension(), ErrorKind::Usage,
          "x0 length does not match the problem dimension");
  require(x0.allFinite(), ErrorKind::InvalidInput, "x0 must be finite");
  if (ctx.options.x_true)
    require(ctx.options.x_true->size() == x0.size(), ErrorKind::Usage,
            "x_true length does not match the problem dimension");
  if (ctx.kind == SolverKind::Ijt)
    require(lp_prox_supported(problem.reg.p), ErrorKind::Config,
            "p: ijt requires p = 1/2 or p = 2/3, got " +
                std::to_string(problem.reg.p));

  SolveResult result;
  result.solver = ctx.kind;

  const double lf = problem.smooth->lipschitz_constant();
  if (config.beta <= lf * (1.0 + 1e-8)) {
    std::ostringstream os;
    os << "beta = " << config.beta << " does not exceed the Lipschitz constant "
       << lf << "; sufficient decrease is not guaranteed";
    result.warnings.push_back(os.str());
  }

  const bool tracing = config.trace_level != TraceLevel::None;
  const bool snapshots = config.trace_level == TraceLevel::Full;

  IterateState state = IterateState::initial(x0, config.eps0);
  auto record = [&](const IterateState &s, bool final_record) {
    if (!tracing)
      return;
    const bool stat = final_record || s.k % config.stationarity_stride == 0;
    result.trace.records.push_back(make_record(ctx, s, stat));
    if (snapshots && (final_record || s.k % config.snapshot_stride == 0))
      result.trace.snapshots.push_back(Snapshot{s.k, s.x});
  };

  record(state, false);
  TerminationReason reason = TerminationReason::MaxIter;
  while (state.k < config.max_iter) {
    try {
      switch (ctx.kind) {
      case SolverKind::Eirl1:
      case SolverKind::Irl1:
        state = eirl1_step(state, problem, config,
                           alpha_at(config.alpha_schedule, state.k));
        break;
      case SolverKind::Irl2:
        state = irl2_step(state, problem, config,
                          alpha_at(config.alpha_schedule, state.k));
        break;
      case SolverKind::Ijt:
        state = ijt_step(state, problem, config);
        break;
      }
    } catch (const Error &e) {
      if (e.kind() != ErrorKind::Numerical)
        throw;
      reason = TerminationReason::NumericalFailure;
      result.failure_message = e.what();
      break;
    }
    const bool met = stopping_rule_met(state, config.opttol);
    record(state, met || state.k >= config.max_iter);
    if (met) {
      reason = TerminationReason::OpttolMet;
      break;
    }
  }

  result.x_final = state.x;
  result.iterations = state.k;
  result.termination_reason = reason;
  result.converged = reason == TerminationReason::OpttolMet;
  return result;
}

} // namespace

SolveResult solve_eirl1(const ProblemInstance &problem, const Vector &x0,
                        const SolverConfig &config, const SolveOptions &options) {
  return run(RunContext{SolverKind::Eirl1, problem, config, options}, x0);
}

SolveResult solve_irl1(const ProblemInstance &problem, const Vector &x0,
                       const SolverConfig &config, const SolveOptions &options) {
  SolverConfig unaccelerated = config;
  unaccelerated.alpha_schedule = AlphaSchedule::constant(0.0);
  return run(RunContext{SolverKind::Irl1, problem, unaccelerated, options}, x0);
}

SolveResult solve_irl2(const ProblemInstance &problem, const Vector &x0,
                       const SolverConfig &config, const SolveOptions &options) {
  return run(RunContext{SolverKind::Irl2, problem, config, options}, x0);
}

SolveResult solve_ijt(const ProblemInstance &problem, const Vector &x0,
                      const SolverConfig &config, const SolveOptions &options) {
  return run(RunContext{SolverKind::Ijt, problem, config, options}, x0);
}

SolveResult solve(SolverKind kind, const ProblemInstance &problem,
                  const Vector &x0, const SolverConfig &config,
                  const SolveOptions &options) {
  switch (kind) {
  case SolverKind::Eirl1:
    return solve_eirl1(problem, x0, config, options);
  case SolverKind::Irl1:
    return solve_irl1(problem, x0, config, options);
  case SolverKind::Irl2:
    return solve_irl2(problem, x0, config, options);
  case SolverKind::Ijt:
    return solve_ijt(problem, x0, config, options);
  }
  fail(ErrorKind::Usage, "unknown solver kind");
}

} // namespace lpeirl1
