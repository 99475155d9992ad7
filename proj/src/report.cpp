// Copyright (c) 2026 The lpeirl1 Authors.
// SPDX-License-Identifier: Apache-2.0

#include "report.hpp"

#include <cmath>

#include "core_math.hpp"
#include "error.hpp"
#include "io.hpp"
#include "rng.hpp"

namespace lpeirl1 {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

json optional_number(const std::optional<double> &v) {
  return v ? json(*v) : json(nullptr);
}

json optional_index(const std::optional<long> &v) {
  return v ? json(*v) : json(nullptr);
}

json rate_json(const RateFit &fit, const char *basis) {
  return json{{"basis", basis},
              {"gamma_hat", optional_number(fit.gamma_hat)},
              {"slope", fit.slope},
              {"r2", fit.r2},
              {"points", fit.points},
              {"tail_fraction", fit.tail_fraction}};
}

std::string dump(const json &j) { return j.dump(2) + "\n"; }

void ensure_dir(const fs::path &dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec)
    fail(ErrorKind::Io, "cannot create directory '" + dir.string() + "': " + ec.message());
}

} // namespace

json diagnostics_report(const Trace &trace, const DiagnosticsOptions &options) {
  json out;
  out["records"] = trace.records.size();
  out["beta"] = options.beta;
  out["alpha_bar"] = options.alpha_bar;

  if (trace.records.size() >= 2) {
    const auto violations = check_psi_decrease(trace, options.beta, options.alpha_bar);
    json list = json::array();
    for (const auto &v : violations)
      list.push_back(json{{"k", v.k}, {"decrease", v.decrease}, {"required", v.required}});
    out["psi_decrease"] = json{{"violations", list}, {"passed", violations.empty()}};
  } else {
    out["psi_decrease"] = json{{"violations", json::array()}, {"passed", nullptr}};
  }

  const auto stab = detect_stabilization(trace);
  out["stabilization"] =
      json{{"support_stable_from", optional_index(stab.support_stable_from)},
           {"sign_stable_from", optional_index(stab.sign_stable_from)},
           {"min_nonzero_magnitude_after_stable",
            stab.min_nonzero_magnitude_after_stable}};

  if (!trace.records.empty()) {
    const long first = trace.records.front().k;
    const long last = trace.records.back().k;
    const long tail_from =
        first + static_cast<long>(std::ceil(0.9 * static_cast<double>(last - first)));
    const double total = tail_sum(trace, first);
    const double tail = tail_sum(trace, tail_from);
    out["tail_sums"] = json{{"total", total},
                            {"last_10pct_from_k", tail_from},
                            {"last_10pct", tail}};
  } else {
    out["tail_sums"] = nullptr;
  }

  out["rate_fit"] = rate_json(fit_step_rate(trace, options.tail_fraction), "step_norm");
  return out;
}

double effective_alpha_bar(SolverKind kind, const SolverConfig &config) {
  if (kind == SolverKind::Irl1 || kind == SolverKind::Ijt)
    return 0.0;
  return config.alpha_schedule.supremum();
}

json solve_summary(const SolveResult &result, const ProblemInstance &problem,
                   const SolverConfig &config, const std::optional<Vector> &x_true) {
  json s;
  s["solver"] = std::string(to_string(result.solver));
  s["alpha"] = result.solver == SolverKind::Eirl1 || result.solver == SolverKind::Irl2
                   ? config.alpha_schedule.describe()
                   : std::string("0");
  s["beta"] = config.beta;
  s["mu"] = config.mu;
  s["eps0"] = config.eps0;
  s["opttol"] = config.opttol;
  s["max_iter"] = config.max_iter;
  s["p"] = problem.reg.p;
  s["lambda"] = problem.reg.lambda;
  s["lipschitz_constant"] = problem.smooth->lipschitz_constant();
  s["termination_reason"] = std::string(to_string(result.termination_reason));
  s["converged"] = result.converged;
  s["iterations"] = result.iterations;
  s["final_objective"] = eval_F(result.x_final, problem);
  s["final_support_size"] = (result.x_final.array() != 0.0).count();
  s["final_stationarity"] = stationarity_residual(result.x_final, problem);
  if (x_true && x_true->size() == result.x_final.size())
    s["final_mse"] = (result.x_final - *x_true).squaredNorm() /
                     static_cast<double>(result.x_final.size());
  else
    s["final_mse"] = nullptr;
  s["warnings"] = result.warnings;
  if (!result.failure_message.empty())
    s["failure"] = result.failure_message;

  const bool psi_model =
      result.solver == SolverKind::Eirl1 || result.solver == SolverKind::Irl1;
  DiagnosticsOptions opts;
  opts.beta = config.beta;
  opts.alpha_bar = effective_alpha_bar(result.solver, config);
  json diag = diagnostics_report(result.trace, opts);
  const json &passed = diag["psi_decrease"]["passed"];
  s["diagnostics"] = diag;
  s["diagnostics_applicable"] = psi_model;
  s["diagnostics_passed"] =
      !psi_model || passed.is_null() || passed.get<bool>();
  return s;
}

std::string slugify(std::string_view label) {
  std::string out;
  for (char c : label) {
    const bool keep = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                      (c >= '0' && c <= '9') || c == '.' || c == '-';
    if (keep)
      out += c;
    else if (!out.empty() && out.back() != '_')
      out += '_';
  }
  while (!out.empty() && out.back() == '_')
    out.pop_back();
  return out;
}

namespace {

json spec_json(const ExperimentSpec &spec) {
  json solvers = json::array();
  for (const auto &e : spec.solver_set)
    solvers.push_back(json{{"solver", std::string(to_string(e.kind))},
                           {"alpha", e.config.alpha_schedule.describe()},
                           {"beta", e.config.beta},
                           {"mu", e.config.mu},
                           {"eps0", e.config.eps0},
                           {"opttol", e.config.opttol},
                           {"max_iter", e.config.max_iter}});
  return json{{"m", spec.m},         {"n", spec.n},
              {"K", spec.K},         {"sigma2", spec.sigma2},
              {"p", spec.reg.p},     {"lambda", spec.reg.lambda},
              {"trials", spec.trials}, {"seed", spec.base_seed},
              {"solvers", solvers}};
}

json stats_json(const SolverStats &st) {
  return json{{"solver", st.solver_id},
              {"median_iterations", st.median_iterations},
              {"mean_iterations", st.mean_iterations},
              {"mean_final_support", st.mean_final_support},
              {"mean_final_mse", st.mean_final_mse},
              {"support_quartiles",
               json{{"min", st.support.min},
                    {"q1", st.support.q1},
                    {"median", st.support.median},
                    {"q3", st.support.q3},
                    {"max", st.support.max}}},
              {"converged", st.converged},
              {"failures", st.failures},
              {"invariant_violations", st.invariant_violations}};
}

std::string curve_csv(const SolverStats &st) {
  std::string out = "k,mean_mse,median_mse\n";
  for (std::size_t k = 0; k < st.mean_mse_curve.size(); ++k) {
    out += std::to_string(k);
    out += ',';
    out += format_double(st.mean_mse_curve[k]);
    out += ',';
    out += format_double(st.median_mse_curve[k]);
    out += '\n';
  }
  return out;
}

void append_trials(std::string &csv, const std::vector<TrialSummary> &summaries) {
  for (const auto &s : summaries) {
    csv += std::to_string(s.seed) + ',' + s.solver_id + ',' +
           std::to_string(s.iterations) + ',' + (s.converged ? "true" : "false") +
           ',' + std::string(to_string(s.termination)) + ',' +
           format_double(s.final_mse) + ',' + std::to_string(s.final_support_size) +
           ',' + std::to_string(s.invariant_violations) + '\n';
  }
}

} // namespace

BenchOutcome write_bench(const RunConfig &config, const fs::path &out_dir,
                         unsigned threads) {
  ensure_dir(out_dir);
  std::vector<std::pair<std::string, ExperimentResult>> runs;
  if (config.alphas) {
    for (auto &entry : alpha_sweep(config.spec, *config.alphas, threads))
      runs.emplace_back(entry.alpha.describe(), std::move(entry.result));
  } else {
    runs.emplace_back("", run_experiment(config.spec, threads));
  }

  BenchOutcome outcome;
  std::string trials_csv =
      "seed,solver,iterations,converged,termination,final_mse,final_support_size,"
      "invariant_violations\n";
  json solvers = json::array();
  for (const auto &[alpha, result] : runs) {
    append_trials(trials_csv, result.summaries);
    for (const auto &s : result.summaries) {
      ++outcome.total_trials;
      if (s.termination == TerminationReason::NumericalFailure)
        ++outcome.failed_trials;
    }
    for (const auto &st : result.stats.solvers) {
      solvers.push_back(stats_json(st));
      write_text_file(out_dir / ("mse_curve_" + slugify(st.solver_id) + ".csv"),
                      curve_csv(st));
    }
  }

  json aggregate{{"generator", Rng::kName},
                 {"spec", spec_json(config.spec)},
                 {"mode", config.alphas ? "alpha_sweep" : "experiment"},
                 {"solvers", solvers}};
  if (config.alphas) {
    json alphas = json::array();
    for (const auto &a : *config.alphas)
      alphas.push_back(a.describe());
    aggregate["alphas"] = alphas;
  }
  write_text_file(out_dir / "trials.csv", trials_csv);
  write_text_file(out_dir / "aggregate.json", dump(aggregate));
  return outcome;
}

void write_instance(const Instance &inst, const fs::path &out_dir, bool with_csv) {
  ensure_dir(out_dir);
  write_matrix(out_dir / "A.bin", inst.A);
  write_vector(out_dir / "x_true.bin", inst.x_true);
  write_vector(out_dir / "y.bin", inst.y);
  json files = json::object();
  for (const char *name : {"A", "x_true", "y"}) {
    const std::string file = std::string(name) + ".bin";
    files[name] = json{{"path", file}, {"fnv1a64", file_checksum(out_dir / file)}};
  }
  if (with_csv) {
    write_matrix_csv(out_dir / "A.csv", inst.A);
    write_matrix_csv(out_dir / "x_true.csv", Matrix(inst.x_true));
    write_matrix_csv(out_dir / "y.csv", Matrix(inst.y));
  }
  json sidecar{{"format", "lpeirl1-instance/1"},
               {"m", inst.A.rows()},
               {"n", inst.A.cols()},
               {"K", inst.sparsity},
               {"sigma2", inst.sigma2},
               {"seed", inst.seed},
               {"generator", Rng::kName},
               {"orthonormalization", "householder-qr"},
               {"files", files}};
  write_text_file(out_dir / "instance.json", dump(sidecar));
}

Instance read_instance(const fs::path &dir) {
  if (!fs::is_directory(dir))
    fail(ErrorKind::Io, "instance directory '" + dir.string() + "' does not exist");
  const fs::path sidecar_path = dir / "instance.json";
  json sidecar = json::object();
  if (fs::exists(sidecar_path)) {
    try {
      sidecar = json::parse(read_text_file(sidecar_path));
    } catch (const json::exception &e) {
      fail(ErrorKind::InvalidInput,
           "'" + sidecar_path.string() + "' is not valid JSON: " + e.what());
    }
    if (sidecar.contains("files"))
      for (auto &[name, info] : sidecar["files"].items()) {
        const fs::path file = dir / info.value("path", name + ".bin");
        if (!fs::exists(file))
          fail(ErrorKind::Io, "instance file '" + file.string() + "' is missing");
        if (info.contains("fnv1a64") &&
            info["fnv1a64"].get<std::string>() != file_checksum(file))
          fail(ErrorKind::InvalidInput, "checksum mismatch for '" + file.string() + "'");
      }
  }

  Instance inst;
  inst.A = read_matrix(dir / "A.bin");
  inst.y = read_vector(dir / "y.bin");
  if (fs::exists(dir / "x_true.bin"))
    inst.x_true = read_vector(dir / "x_true.bin");
  if (inst.y.size() != inst.A.rows())
    fail(ErrorKind::InvalidInput, "y length does not match the rows of A");
  if (inst.x_true.size() != 0 && inst.x_true.size() != inst.A.cols())
    fail(ErrorKind::InvalidInput, "x_true length does not match the columns of A");
  inst.seed = sidecar.value("seed", std::uint64_t{0});
  inst.sigma2 = sidecar.value("sigma2", 0.0);
  inst.sparsity = sidecar.value("K", Index{0});
  return inst;
}

} // namespace lpeirl1
