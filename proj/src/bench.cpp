// Copyright (c) 2026 The lpeirl1 Authors.
// SPDX-License-Identifier: Apache-2.0

#include "bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <memory>
#include <mutex>
#include <thread>

#include "diagnostics.hpp"
#include "error.hpp"
#include "io.hpp"
#include "problems.hpp"
#include "rng.hpp"
#include "thresholding.hpp"

namespace lpeirl1 {

Instance generate_instance(Index m, Index n, Index K, double sigma2,
                           std::uint64_t seed) {
  require(m > 0 && n > 0, ErrorKind::Specification, "m, n: must be positive");
  require(m < n, ErrorKind::Specification,
          "m: must be smaller than n (got m = " + std::to_string(m) +
              ", n = " + std::to_string(n) + ")");
  require(K >= 0 && K <= n, ErrorKind::Specification,
          "K: must lie in [0, n] (got K = " + std::to_string(K) +
              ", n = " + std::to_string(n) + ")");
  require(std::isfinite(sigma2) && sigma2 >= 0.0, ErrorKind::Specification,
          "sigma2: must be >= 0");

  Rng rng(seed);
  Instance inst;
  inst.seed = seed;
  inst.sigma2 = sigma2;
  inst.sparsity = K;

  // Draw row-major so the stream order does not depend on storage order.
  Matrix G(m, n);
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < n; ++j)
      G(i, j) = rng.normal();
  Eigen::HouseholderQR<Matrix> qr(G.transpose());
  Matrix Q = qr.householderQ() * Matrix::Identity(n, m);
  inst.A = Q.transpose();

  inst.x_true = Vector::Zero(n);
  for (std::size_t pos : rng.sample_without_replacement(
           static_cast<std::size_t>(n), static_cast<std::size_t>(K)))
    inst.x_true[static_cast<Index>(pos)] = rng.uniform() < 0.5 ? -1.0 : 1.0;

  inst.y = inst.A * inst.x_true;
  if (sigma2 > 0.0) {
    const double sd = std::sqrt(sigma2);
    for (Index i = 0; i < m; ++i)
      inst.y[i] += sd * rng.normal();
  }
  return inst;
}

Vector initial_point(Index n, std::uint64_t instance_seed) {
  Rng rng(instance_seed + kStartSeedOffset);
  Vector x(n);
  for (Index i = 0; i < n; ++i)
    x[i] = rng.normal();
  return x;
}

std::string default_label(SolverKind kind, const SolverConfig &config) {
  std::string label(to_string(kind));
  if (kind == SolverKind::Eirl1 || kind == SolverKind::Irl2) {
    const auto &a = config.alpha_schedule;
    label += "(alpha=";
    label += a.kind == AlphaSchedule::Kind::Nesterov ? "nesterov"
                                                     : format_double(a.value);
    label += ")";
  }
  return label;
}

void ExperimentSpec::validate() const {
  require(m > 0 && n > 0, ErrorKind::Specification, "m, n: must be positive");
  require(m < n, ErrorKind::Specification, "m: must be smaller than n");
  require(K >= 0 && K <= n, ErrorKind::Specification,
          "K: must lie in [0, n] (got K = " + std::to_string(K) + ")");
  require(std::isfinite(sigma2) && sigma2 >= 0.0, ErrorKind::Specification,
          "sigma2: must be >= 0");
  require(trials >= 1, ErrorKind::Specification, "trials: must be >= 1");
  require(!solver_set.empty(), ErrorKind::Specification,
          "solvers: at least one solver is required");
  for (const auto &entry : solver_set) {
    entry.config.validate();
    if (entry.kind == SolverKind::Ijt)
      require(lp_prox_supported(reg.p), ErrorKind::Config,
              "p: ijt requires p = 1/2 or p = 2/3");
  }
}

double median(std::vector<double> values) { return quartiles(std::move(values)).median; }

Quartiles quartiles(std::vector<double> values) {
  Quartiles q;
  if (values.empty())
    return q;
  std::sort(values.begin(), values.end());
  auto at = [&](double prob) {
    const double h = prob * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
  };
  q.min = values.front();
  q.q1 = at(0.25);
  q.median = at(0.5);
  q.q3 = at(0.75);
  q.max = values.back();
  return q;
}

namespace {

struct TrialOutcome {
  TrialSummary summary;
  std::vector<double> mse_curve;
};

bool uses_psi_model(SolverKind kind) {
  return kind == SolverKind::Eirl1 || kind == SolverKind::Irl1;
}

std::vector<TrialOutcome> run_trial(const ExperimentSpec &spec,
                                    const std::vector<std::string> &labels,
                                    long t) {
  const std::uint64_t seed = spec.base_seed + static_cast<std::uint64_t>(t);
  const Instance inst = generate_instance(spec.m, spec.n, spec.K, spec.sigma2, seed);
  const Vector x0 = initial_point(spec.n, seed);
  const ProblemInstance problem(
      std::make_shared<LeastSquaresProblem>(inst.A, inst.y), spec.reg);
  SolveOptions options;
  options.x_true = inst.x_true;

  std::vector<TrialOutcome> out;
  for (std::size_t s = 0; s < spec.solver_set.size(); ++s) {
    const auto &entry = spec.solver_set[s];
    SolverConfig config = entry.config;
    // Curves and invariant checks need per-iteration scalars only.
    config.trace_level = TraceLevel::Summary;

    const auto start = std::chrono::steady_clock::now();
    SolveResult res = solve(entry.kind, problem, x0, config, options);
    const auto stop = std::chrono::steady_clock::now();

    TrialOutcome o;
    o.summary.seed = seed;
    o.summary.solver_id = labels[s];
    o.summary.iterations = res.iterations;
    o.summary.converged = res.converged;
    o.summary.termination = res.termination_reason;
    o.summary.final_mse =
        (res.x_final - inst.x_true).squaredNorm() / static_cast<double>(spec.n);
    o.summary.final_support_size = (res.x_final.array() != 0.0).count();
    o.summary.wall_time = std::chrono::duration<double>(stop - start).count();
    if (uses_psi_model(entry.kind) && res.trace.records.size() >= 2)
      o.summary.invariant_violations = static_cast<long>(
          check_psi_decrease(res.trace, config.beta,
                             entry.kind == SolverKind::Irl1
                                 ? 0.0
                                 : config.alpha_schedule.supremum())
              .size());
    o.mse_curve.reserve(res.trace.records.size());
    for (const auto &r : res.trace.records)
      o.mse_curve.push_back(r.mse.value_or(0.0));
    out.push_back(std::move(o));
  }
  return out;
}

SolverStats aggregate(const std::string &label,
                      const std::vector<const TrialOutcome *> &trials) {
  SolverStats st;
  st.solver_id = label;
  std::size_t len = 0;
  for (const auto *t : trials)
    len = std::max(len, t->mse_curve.size());
  st.mean_mse_curve.assign(len, 0.0);
  st.median_mse_curve.assign(len, 0.0);
  std::vector<double> column(trials.size());
  for (std::size_t k = 0; k < len; ++k) {
    double sum = 0.0;
    for (std::size_t i = 0; i < trials.size(); ++i) {
      const auto &c = trials[i]->mse_curve;
      // Right-extend shorter curves with their final value.
      column[i] = c.empty() ? 0.0 : c[std::min(k, c.size() - 1)];
      sum += column[i];
    }
    st.mean_mse_curve[k] = sum / static_cast<double>(trials.size());
    st.median_mse_curve[k] = median(column);
  }

  std::vector<double> support, iters;
  double mse_sum = 0.0;
  for (const auto *t : trials) {
    const auto &s = t->summary;
    support.push_back(static_cast<double>(s.final_support_size));
    iters.push_back(static_cast<double>(s.iterations));
    mse_sum += s.final_mse;
    st.converged += s.converged ? 1 : 0;
    st.failures += s.termination == TerminationReason::NumericalFailure ? 1 : 0;
    st.invariant_violations += s.invariant_violations;
  }
  const double n = static_cast<double>(trials.size());
  st.support = quartiles(support);
  st.median_iterations = median(iters);
  double iter_sum = 0.0, support_sum = 0.0;
  for (double v : iters)
    iter_sum += v;
  for (double v : support)
    support_sum += v;
  st.mean_iterations = iter_sum / n;
  st.mean_final_support = support_sum / n;
  st.mean_final_mse = mse_sum / n;
  return st;
}

} // namespace

ExperimentResult run_experiment(const ExperimentSpec &spec, unsigned threads) {
  spec.validate();

  std::vector<std::string> labels;
  for (const auto &entry : spec.solver_set) {
    std::string label =
        entry.label.empty() ? default_label(entry.kind, entry.config) : entry.label;
    std::string unique = label;
    for (long suffix = 2; std::count(labels.begin(), labels.end(), unique) > 0;
         ++suffix)
      unique = label + "#" + std::to_string(suffix);
    labels.push_back(unique);
  }

  const auto trials = static_cast<std::size_t>(spec.trials);
  std::vector<std::vector<TrialOutcome>> per_trial(trials);
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::size_t t = next++; t < trials; t = next++) {
      try {
        per_trial[t] = run_trial(spec, labels, static_cast<long>(t));
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error)
          error = std::current_exception();
      }
    }
  };
  const unsigned workers =
      std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(trials)));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < workers; ++i)
      pool.emplace_back(worker);
    for (auto &th : pool)
      th.join();
  }
  if (error)
    std::rethrow_exception(error);

  ExperimentResult result;
  for (const auto &trial : per_trial)
    for (const auto &o : trial)
      result.summaries.push_back(o.summary);
  for (std::size_t s = 0; s < labels.size(); ++s) {
    std::vector<const TrialOutcome *> column;
    for (const auto &trial : per_trial)
      column.push_back(&trial[s]);
    result.stats.solvers.push_back(aggregate(labels[s], column));
  }
  return result;
}

std::vector<AlphaSweepEntry> alpha_sweep(const ExperimentSpec &spec,
                                         const std::vector<AlphaSchedule> &alphas,
                                         unsigned threads) {
  const SolverConfig base =
      spec.solver_set.empty() ? SolverConfig{} : spec.solver_set.front().config;
  std::vector<AlphaSweepEntry> out;
  for (const auto &alpha : alphas) {
    if (alpha.kind == AlphaSchedule::Kind::Constant)
      require(alpha.value >= 0.0 && alpha.value < 1.0, ErrorKind::Config,
              "alphas: every value must lie in [0,1)");
    ExperimentSpec one = spec;
    SolverEntry entry;
    entry.kind = SolverKind::Eirl1;
    entry.config = base;
    entry.config.alpha_schedule = alpha;
    one.solver_set = {entry};
    out.push_back(AlphaSweepEntry{alpha, run_experiment(one, threads)});
  }
  return out;
}

} // namespace lpeirl1
