// Copyright (c) 2026 The lpeirl1 Authors.
// SPDX-License-Identifier: Apache-2.0

// Command-line front end over the C interface.
//
//   lpeirl1 generate --config cfg.json --out inst/
//   lpeirl1 solve    inst/ --solver eirl1 --alpha 0.9 --out run/
//   lpeirl1 bench    --config cfg.json --out bench/
//   lpeirl1 diagnose run/trace.csv --out diag.json
//
// Exit status: 0 success, 1 usage or configuration error, 2 runtime error.

#include <cstdio>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lpeirl1/lpeirl1.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;

int exit_code(lpe_status s) {
  switch (s) {
  case LPE_OK: return kExitOk;
  case LPE_ERR_USAGE:
  case LPE_ERR_CONFIG:
  case LPE_ERR_SPEC: return kExitUsage;
  default: return kExitRuntime;
  }
}

// Thrown to unwind out of a command with a given status.
struct Failure {
  int code;
};

void check(lpe_status s, const char *context) {
  if (s == LPE_OK)
    return;
  std::fprintf(stderr, "lpeirl1: %s: %s\n", context, lpe_last_error());
  throw Failure{exit_code(s)};
}

struct ConfigHandle {
  lpe_config *ptr = nullptr;
  ~ConfigHandle() { lpe_config_destroy(ptr); }
};

struct CommonFlags {
  std::string config;
  std::string out;
  std::map<std::string, std::string> overrides;
};

// Registers the shared configuration flags on a subcommand. Each flag
// given on the command line overrides the matching config-file field.
void add_config_flags(CLI::App *cmd, CommonFlags &flags) {
  cmd->add_option("--config", flags.config, "JSON run configuration")
      ->check(CLI::ExistingFile);
  struct Flag {
    const char *name;
    const char *key;
    const char *help;
  };
  static const Flag kFlags[] = {
      {"--solver", "solver", "eirl1 | irl1 | irl2 | ijt"},
      {"--alpha", "alpha", "extrapolation: constant in [0,1) or nesterov"},
      {"--p", "p", "exponent in (0,1)"},
      {"--lambda", "lambda", "regularization weight"},
      {"--seed", "seed", "base seed"},
      {"--opttol", "opttol", "relative step tolerance"},
      {"--max-iter", "max_iter", "iteration cap"},
      {"--trace", "trace", "none | summary | full"},
      {"--beta", "beta", "proximal parameter"},
      {"--mu", "mu", "smoothing decay in (0,1)"},
      {"--eps0", "eps0", "initial smoothing"},
      {"--trials", "trials", "number of trials"},
      {"--alphas", "alphas", "comma-separated alpha sweep"},
      {"--x0", "x0", "gaussian | zero | path to a vector file"},
  };
  for (const auto &f : kFlags) {
    const std::string key = f.key;
    cmd->add_option_function<std::string>(
        f.name, [&flags, key](const std::string &v) { flags.overrides[key] = v; },
        f.help);
  }
}

void load_config(const CommonFlags &flags, ConfigHandle &cfg) {
  if (flags.config.empty())
    check(lpe_config_create(&cfg.ptr), "config");
  else
    check(lpe_config_load(flags.config.c_str(), &cfg.ptr), flags.config.c_str());
  for (const auto &[key, value] : flags.overrides)
    check(lpe_config_set(cfg.ptr, key.c_str(), value.c_str()), ("--" + key).c_str());
  check(lpe_config_validate(cfg.ptr), "config");
}

unsigned thread_cap() {
  const char *env = std::getenv("LP_EIRL1_THREADS");
  if (env == nullptr || *env == '\0')
    return 0;
  char *end = nullptr;
  const unsigned long v = std::strtoul(env, &end, 10);
  if (*end != '\0' || v == 0) {
    std::fprintf(stderr, "lpeirl1: LP_EIRL1_THREADS must be a positive integer\n");
    throw Failure{kExitUsage};
  }
  return static_cast<unsigned>(v);
}

int cmd_generate(const CommonFlags &flags, bool csv) {
  ConfigHandle cfg;
  load_config(flags, cfg);
  lpe_instance *inst = nullptr;
  check(lpe_instance_generate(cfg.ptr, &inst), "generate");
  const lpe_status s = lpe_instance_save(inst, flags.out.c_str(), csv ? 1 : 0);
  lpe_instance_destroy(inst);
  check(s, flags.out.c_str());
  return kExitOk;
}

int cmd_solve(const CommonFlags &flags, const std::string &instance_dir) {
  ConfigHandle cfg;
  load_config(flags, cfg);
  lpe_instance *inst = nullptr;
  check(lpe_instance_load(instance_dir.c_str(), &inst), instance_dir.c_str());
  lpe_result *res = nullptr;
  const lpe_status s = lpe_solve(inst, cfg.ptr, nullptr, &res);
  lpe_instance_destroy(inst);
  check(s, "solve");

  size_t warnings = 0;
  lpe_result_warning_count(res, &warnings);
  for (size_t i = 0; i < warnings; ++i) {
    const char *w = nullptr;
    lpe_result_warning(res, i, &w);
    std::fprintf(stderr, "lpeirl1: warning: %s\n", w);
  }
  const lpe_status ws = lpe_result_write(res, flags.out.c_str());
  const char *reason = "";
  int64_t iterations = 0;
  lpe_result_termination(res, &reason);
  lpe_result_iterations(res, &iterations);
  const std::string why = reason;
  lpe_result_destroy(res);
  check(ws, flags.out.c_str());

  std::printf("%s after %lld iterations\n", why.c_str(),
              static_cast<long long>(iterations));
  if (why == "numerical_failure") {
    std::fprintf(stderr, "lpeirl1: solve stopped on a non-finite iterate\n");
    return kExitRuntime;
  }
  return kExitOk;
}

int cmd_bench(const CommonFlags &flags) {
  ConfigHandle cfg;
  load_config(flags, cfg);
  size_t total = 0;
  size_t failed = 0;
  check(lpe_bench(cfg.ptr, flags.out.c_str(), thread_cap(), &total, &failed), "bench");
  std::printf("%zu trials, %zu failed\n", total, failed);
  if (failed > 0)
    std::fprintf(stderr, "lpeirl1: warning: %zu of %zu trials failed\n", failed, total);
  return total > 0 && failed == total ? kExitRuntime : kExitOk;
}

int cmd_diagnose(const CommonFlags &flags, const std::string &trace_path,
                 double tail_fraction) {
  ConfigHandle cfg;
  load_config(flags, cfg);
  char *json = nullptr;
  check(lpe_diagnose(trace_path.c_str(), cfg.ptr, tail_fraction, &json),
        trace_path.c_str());
  const std::string text = json;
  lpe_string_free(json);
  if (flags.out.empty()) {
    std::fputs(text.c_str(), stdout);
    return kExitOk;
  }
  std::FILE *f = std::fopen(flags.out.c_str(), "wb");
  if (f == nullptr) {
    std::fprintf(stderr, "lpeirl1: cannot open '%s' for writing\n", flags.out.c_str());
    return kExitRuntime;
  }
  const bool ok = std::fwrite(text.data(), 1, text.size(), f) == text.size();
  if (std::fclose(f) != 0 || !ok) {
    std::fprintf(stderr, "lpeirl1: write to '%s' failed\n", flags.out.c_str());
    return kExitRuntime;
  }
  return kExitOk;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Extrapolated iteratively reweighted l1 solvers and benchmarks", "lpeirl1"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(lpe_version()));

  CommonFlags gen_flags, solve_flags, bench_flags, diag_flags;
  bool csv = false;
  std::string instance_dir;
  std::string trace_path;
  double tail_fraction = 0.5;

  auto *gen = app.add_subcommand("generate", "write a seeded problem instance");
  add_config_flags(gen, gen_flags);
  gen->add_option("--out", gen_flags.out, "output directory")->required();
  gen->add_flag("--csv", csv, "also write CSV copies");

  auto *sol = app.add_subcommand("solve", "run one solver on an instance");
  sol->add_option("instance,--instance", instance_dir, "instance directory")->required();
  add_config_flags(sol, solve_flags);
  sol->add_option("--out", solve_flags.out, "output directory")->required();

  auto *ben = app.add_subcommand("bench", "run a seeded multi-trial experiment");
  add_config_flags(ben, bench_flags);
  ben->add_option("--out", bench_flags.out, "output directory")->required();

  auto *dia = app.add_subcommand("diagnose", "analyse a trace CSV");
  dia->add_option("trace_csv", trace_path, "trace CSV written by solve")->required();
  add_config_flags(dia, diag_flags);
  dia->add_option("--out", diag_flags.out, "output JSON file (default stdout)");
  dia->add_option("--tail-fraction", tail_fraction, "tail share used by the rate fit")
      ->check(CLI::Range(0.0, 1.0));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen)
      return cmd_generate(gen_flags, csv);
    if (*sol)
      return cmd_solve(solve_flags, instance_dir);
    if (*ben)
      return cmd_bench(bench_flags);
    return cmd_diagnose(diag_flags, trace_path, tail_fraction);
  } catch (const Failure &f) {
    return f.code;
  }
}
