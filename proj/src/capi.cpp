// Copyright (c) 2026 The lpeirl1 Authors.
// SPDX-License-Identifier: Apache-2.0

#include "lpeirl1/lpeirl1.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>
#include <thread>

#include "bench.hpp"
#include "error.hpp"
#include "io.hpp"
#include "report.hpp"
#include "run_config.hpp"
#include "solvers.hpp"

struct lpe_config {
  lpeirl1::ConfigDocument doc;
};

struct lpe_instance {
  lpeirl1::Instance data;
  std::shared_ptr<const lpeirl1::LeastSquaresProblem> problem;
};

struct lpe_result {
  lpeirl1::SolveResult result;
  std::string summary;
  std::string termination;
};

namespace {

using namespace lpeirl1;

thread_local std::string g_last_error;

lpe_status status_of(ErrorKind kind) {
  switch (kind) {
  case ErrorKind::Usage: return LPE_ERR_USAGE;
  case ErrorKind::Config: return LPE_ERR_CONFIG;
  case ErrorKind::InvalidInput: return LPE_ERR_INVALID_INPUT;
  case ErrorKind::Specification: return LPE_ERR_SPEC;
  case ErrorKind::Estimation: return LPE_ERR_ESTIMATION;
  case ErrorKind::Numerical: return LPE_ERR_NUMERICAL;
  case ErrorKind::Io: return LPE_ERR_IO;
  }
  return LPE_ERR_INTERNAL;
}

template <class Fn> lpe_status guarded(Fn &&fn) {
  g_last_error.clear();
  try {
    fn();
    return LPE_OK;
  } catch (const Error &e) {
    g_last_error = e.what();
    return status_of(e.kind());
  } catch (const nlohmann::json::exception &e) {
    g_last_error = e.what();
    return LPE_ERR_INVALID_INPUT;
  } catch (const std::filesystem::filesystem_error &e) {
    g_last_error = e.what();
    return LPE_ERR_IO;
  } catch (const std::bad_alloc &) {
    g_last_error = "out of memory";
    return LPE_ERR_INTERNAL;
  } catch (const std::exception &e) {
    g_last_error = e.what();
    return LPE_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return LPE_ERR_INTERNAL;
  }
}

void need(const void *p, const char *what) {
  if (p == nullptr)
    fail(ErrorKind::Usage, std::string(what) + " must not be null");
}

char *dup_string(const std::string &s) {
  char *out = static_cast<char *>(std::malloc(s.size() + 1));
  if (out == nullptr)
    throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::unique_ptr<lpe_instance> wrap(Instance inst) {
  auto h = std::make_unique<lpe_instance>();
  const double L = inst.A.isZero(0.0) ? 0.0 : estimate_lipschitz(inst.A);
  h->problem = std::make_shared<const LeastSquaresProblem>(inst.A, inst.y, L);
  h->data = std::move(inst);
  return h;
}

Vector start_point(const lpe_instance &inst, const std::string &mode) {
  const Index n = inst.data.A.cols();
  if (mode == "gaussian")
    return initial_point(n, inst.data.seed);
  if (mode == "zero")
    return Vector::Zero(n);
  Vector x0 = read_vector(mode);
  if (x0.size() != n)
    fail(ErrorKind::InvalidInput, "x0 file '" + mode + "' has length " +
                                      std::to_string(x0.size()) + ", expected " +
                                      std::to_string(n));
  return x0;
}

} // namespace

extern "C" {

const char *lpe_version(void) { return "1.0.0"; }

const char *lpe_status_string(lpe_status status) {
  switch (status) {
  case LPE_OK: return "ok";
  case LPE_ERR_USAGE: return "usage error";
  case LPE_ERR_CONFIG: return "configuration error";
  case LPE_ERR_INVALID_INPUT: return "invalid input";
  case LPE_ERR_IO: return "I/O error";
  case LPE_ERR_NUMERICAL: return "numerical failure";
  case LPE_ERR_ESTIMATION: return "estimation failure";
  case LPE_ERR_SPEC: return "specification error";
  case LPE_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char *lpe_last_error(void) { return g_last_error.c_str(); }

void lpe_string_free(char *s) { std::free(s); }

lpe_status lpe_config_create(lpe_config **out) {
  return guarded([&] {
    need(out, "out");
    *out = new lpe_config{};
  });
}

lpe_status lpe_config_parse(const char *json_text, lpe_config **out) {
  return guarded([&] {
    need(json_text, "json_text");
    need(out, "out");
    *out = new lpe_config{ConfigDocument::parse(json_text)};
  });
}

lpe_status lpe_config_load(const char *path, lpe_config **out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = new lpe_config{ConfigDocument::load(path)};
  });
}

lpe_status lpe_config_set(lpe_config *cfg, const char *key, const char *value) {
  return guarded([&] {
    need(cfg, "cfg");
    need(key, "key");
    need(value, "value");
    cfg->doc.set(key, value);
  });
}

lpe_status lpe_config_validate(const lpe_config *cfg) {
  return guarded([&] {
    need(cfg, "cfg");
    (void)cfg->doc.resolve();
  });
}

lpe_status lpe_config_get_double(const lpe_config *cfg, const char *key, double *out) {
  return guarded([&] {
    need(cfg, "cfg");
    need(key, "key");
    need(out, "out");
    const RunConfig rc = cfg->doc.resolve();
    const auto &s = rc.spec;
    const auto &c = rc.solver_config;
    const std::string k = key;
    if (k == "m") *out = static_cast<double>(s.m);
    else if (k == "n") *out = static_cast<double>(s.n);
    else if (k == "K") *out = static_cast<double>(s.K);
    else if (k == "sigma2") *out = s.sigma2;
    else if (k == "p") *out = s.reg.p;
    else if (k == "lambda") *out = s.reg.lambda;
    else if (k == "trials") *out = static_cast<double>(s.trials);
    else if (k == "seed") *out = static_cast<double>(s.base_seed);
    else if (k == "beta") *out = c.beta;
    else if (k == "mu") *out = c.mu;
    else if (k == "eps0") *out = c.eps0;
    else if (k == "opttol") *out = c.opttol;
    else if (k == "max_iter") *out = static_cast<double>(c.max_iter);
    else if (k == "alpha_bar") *out = effective_alpha_bar(rc.solver, c);
    else fail(ErrorKind::Usage, "unknown configuration key '" + k + "'");
  });
}

lpe_status lpe_config_to_json(const lpe_config *cfg, char **out) {
  return guarded([&] {
    need(cfg, "cfg");
    need(out, "out");
    *out = dup_string(cfg->doc.json().dump(2));
  });
}

void lpe_config_destroy(lpe_config *cfg) { delete cfg; }

lpe_status lpe_instance_generate(const lpe_config *cfg, lpe_instance **out) {
  return guarded([&] {
    need(cfg, "cfg");
    need(out, "out");
    const RunConfig rc = cfg->doc.resolve();
    const auto &s = rc.spec;
    *out = wrap(generate_instance(s.m, s.n, s.K, s.sigma2, s.base_seed)).release();
  });
}

lpe_status lpe_instance_create(size_t m, size_t n, const double *A, const double *y,
                               const double *x_true, lpe_instance **out) {
  return guarded([&] {
    need(A, "A");
    need(y, "y");
    need(out, "out");
    if (m == 0 || n == 0)
      fail(ErrorKind::Usage, "instance dimensions must be positive");
    Instance inst;
    const auto rows = static_cast<Index>(m);
    const auto cols = static_cast<Index>(n);
    inst.A = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                            Eigen::RowMajor>>(A, rows, cols);
    inst.y = Eigen::Map<const Vector>(y, rows);
    if (x_true != nullptr) {
      inst.x_true = Eigen::Map<const Vector>(x_true, cols);
      inst.sparsity = (inst.x_true.array() != 0.0).count();
    }
    if (!inst.A.allFinite() || !inst.y.allFinite() || !inst.x_true.allFinite())
      fail(ErrorKind::InvalidInput, "instance data must be finite");
    *out = wrap(std::move(inst)).release();
  });
}

lpe_status lpe_instance_load(const char *dir, lpe_instance **out) {
  return guarded([&] {
    need(dir, "dir");
    need(out, "out");
    *out = wrap(read_instance(dir)).release();
  });
}

lpe_status lpe_instance_save(const lpe_instance *inst, const char *dir, int with_csv) {
  return guarded([&] {
    need(inst, "inst");
    need(dir, "dir");
    write_instance(inst->data, dir, with_csv != 0);
  });
}

lpe_status lpe_instance_dims(const lpe_instance *inst, size_t *m, size_t *n) {
  return guarded([&] {
    need(inst, "inst");
    if (m != nullptr)
      *m = static_cast<size_t>(inst->data.A.rows());
    if (n != nullptr)
      *n = static_cast<size_t>(inst->data.A.cols());
  });
}

lpe_status lpe_instance_x_true(const lpe_instance *inst, double *buf, size_t len) {
  return guarded([&] {
    need(inst, "inst");
    need(buf, "buf");
    const Vector &x = inst->data.x_true;
    if (x.size() == 0)
      fail(ErrorKind::Usage, "instance has no ground truth");
    if (len != static_cast<size_t>(x.size()))
      fail(ErrorKind::Usage, "buffer length does not match n");
    std::memcpy(buf, x.data(), len * sizeof(double));
  });
}

void lpe_instance_destroy(lpe_instance *inst) { delete inst; }

lpe_status lpe_solve(const lpe_instance *inst, const lpe_config *cfg, const double *x0,
                     lpe_result **out) {
  return guarded([&] {
    need(inst, "inst");
    need(cfg, "cfg");
    need(out, "out");
    const RunConfig rc = cfg->doc.resolve();
    ProblemInstance problem(inst->problem, rc.spec.reg);
    const Index n = inst->data.A.cols();
    const Vector start = x0 != nullptr ? Vector(Eigen::Map<const Vector>(x0, n))
                                       : start_point(*inst, rc.x0);
    SolveOptions options;
    std::optional<Vector> truth;
    if (inst->data.x_true.size() == n) {
      truth = inst->data.x_true;
      options.x_true = truth;
    }
    auto res = std::make_unique<lpe_result>();
    res->result = solve(rc.solver, problem, start, rc.solver_config, options);
    res->summary = solve_summary(res->result, problem, rc.solver_config, truth).dump(2) + "\n";
    res->termination = std::string(to_string(res->result.termination_reason));
    *out = res.release();
  });
}

lpe_status lpe_result_converged(const lpe_result *res, int *out) {
  return guarded([&] {
    need(res, "res");
    need(out, "out");
    *out = res->result.converged ? 1 : 0;
  });
}

lpe_status lpe_result_iterations(const lpe_result *res, int64_t *out) {
  return guarded([&] {
    need(res, "res");
    need(out, "out");
    *out = res->result.iterations;
  });
}

lpe_status lpe_result_termination(const lpe_result *res, const char **out) {
  return guarded([&] {
    need(res, "res");
    need(out, "out");
    *out = res->termination.c_str();
  });
}

lpe_status lpe_result_x(const lpe_result *res, double *buf, size_t len) {
  return guarded([&] {
    need(res, "res");
    need(buf, "buf");
    const Vector &x = res->result.x_final;
    if (len != static_cast<size_t>(x.size()))
      fail(ErrorKind::Usage, "buffer length does not match n");
    std::memcpy(buf, x.data(), len * sizeof(double));
  });
}

lpe_status lpe_result_trace_rows(const lpe_result *res, size_t *out) {
  return guarded([&] {
    need(res, "res");
    need(out, "out");
    *out = res->result.trace.records.size();
  });
}

lpe_status lpe_result_warning_count(const lpe_result *res, size_t *out) {
  return guarded([&] {
    need(res, "res");
    need(out, "out");
    *out = res->result.warnings.size();
  });
}

lpe_status lpe_result_warning(const lpe_result *res, size_t i, const char **out) {
  return guarded([&] {
    need(res, "res");
    need(out, "out");
    if (i >= res->result.warnings.size())
      fail(ErrorKind::Usage, "warning index out of range");
    *out = res->result.warnings[i].c_str();
  });
}

lpe_status lpe_result_trace_csv(const lpe_result *res, char **out) {
  return guarded([&] {
    need(res, "res");
    need(out, "out");
    *out = dup_string(trace_to_csv(res->result.trace));
  });
}

lpe_status lpe_result_summary_json(const lpe_result *res, char **out) {
  return guarded([&] {
    need(res, "res");
    need(out, "out");
    *out = dup_string(res->summary);
  });
}

lpe_status lpe_result_write(const lpe_result *res, const char *dir) {
  return guarded([&] {
    need(res, "res");
    need(dir, "dir");
    const std::filesystem::path out(dir);
    std::error_code ec;
    std::filesystem::create_directories(out, ec);
    if (ec)
      fail(ErrorKind::Io, "cannot create directory '" + out.string() + "': " + ec.message());
    write_trace_csv(out / "trace.csv", res->result.trace);
    write_text_file(out / "summary.json", res->summary);
    write_vector(out / "x_final.bin", res->result.x_final);
  });
}

void lpe_result_destroy(lpe_result *res) { delete res; }

lpe_status lpe_bench(const lpe_config *cfg, const char *out_dir, unsigned threads,
                     size_t *total, size_t *failed) {
  return guarded([&] {
    need(cfg, "cfg");
    need(out_dir, "out_dir");
    if (threads == 0)
      threads = std::max(1u, std::thread::hardware_concurrency());
    const BenchOutcome outcome = write_bench(cfg->doc.resolve(), out_dir, threads);
    if (total != nullptr)
      *total = outcome.total_trials;
    if (failed != nullptr)
      *failed = outcome.failed_trials;
  });
}

lpe_status lpe_diagnose(const char *trace_csv_path, const lpe_config *cfg,
                        double tail_fraction, char **json_out) {
  return guarded([&] {
    need(trace_csv_path, "trace_csv_path");
    need(json_out, "json_out");
    if (!(tail_fraction > 0.0 && tail_fraction <= 1.0))
      fail(ErrorKind::Config, "tail_fraction: must lie in (0,1]");
    const RunConfig rc = cfg != nullptr ? cfg->doc.resolve() : ConfigDocument().resolve();
    DiagnosticsOptions opts;
    opts.beta = rc.solver_config.beta;
    opts.alpha_bar = effective_alpha_bar(rc.solver, rc.solver_config);
    opts.tail_fraction = tail_fraction;
    const Trace trace = read_trace_csv(trace_csv_path);
    *json_out = dup_string(diagnostics_report(trace, opts).dump(2) + "\n");
  });
}

} // extern "C"
