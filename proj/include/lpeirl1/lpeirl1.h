/* Copyright (c) 2026 The lpeirl1 Authors.
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to the lpeirl1 solver library.
 *
 * Every function returns an lpe_status. On failure the message for the
 * calling thread is available from lpe_last_error() until the next call
 * on that thread. Handles are opaque; each *_create / *_load / *_generate
 * result is released with the matching *_destroy. Strings handed out by
 * the library through char** are released with lpe_string_free.
 */
#ifndef LPEIRL1_LPEIRL1_H
#define LPEIRL1_LPEIRL1_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(LPEIRL1_BUILDING)
#define LPE_API __declspec(dllexport)
#else
#define LPE_API __declspec(dllimport)
#endif
#else
#define LPE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lpe_status {
  LPE_OK = 0,
  LPE_ERR_USAGE = 1,         /* bad argument, null handle, unknown key */
  LPE_ERR_CONFIG = 2,        /* configuration value out of range */
  LPE_ERR_INVALID_INPUT = 3, /* malformed or non-finite data */
  LPE_ERR_IO = 4,
  LPE_ERR_NUMERICAL = 5,     /* solver produced a non-finite iterate */
  LPE_ERR_ESTIMATION = 6,    /* Lipschitz estimate did not settle */
  LPE_ERR_SPEC = 7,          /* experiment cannot be realized (K > n, m >= n) */
  LPE_ERR_INTERNAL = 8
} lpe_status;

typedef struct lpe_config lpe_config;
typedef struct lpe_instance lpe_instance;
typedef struct lpe_result lpe_result;

LPE_API const char *lpe_version(void);
LPE_API const char *lpe_status_string(lpe_status status);
/* Message of the last failed call on this thread; "" when none. */
LPE_API const char *lpe_last_error(void);
LPE_API void lpe_string_free(char *s);

/* ---- configuration ---------------------------------------------------- */

/* Defaults for every field. */
LPE_API lpe_status lpe_config_create(lpe_config **out);
/* JSON document; unknown keys and out-of-range fields are rejected. */
LPE_API lpe_status lpe_config_parse(const char *json_text, lpe_config **out);
LPE_API lpe_status lpe_config_load(const char *path, lpe_config **out);
/* Overrides one field, e.g. ("alpha", "nesterov") or ("max-iter", "200").
 * Solver-level keys also replace the key in every "solvers" entry. */
LPE_API lpe_status lpe_config_set(lpe_config *cfg, const char *key, const char *value);
/* Resolves the document; reports the first invalid field. */
LPE_API lpe_status lpe_config_validate(const lpe_config *cfg);
/* Numeric view of the resolved single-solve configuration. Keys: m, n, K,
 * sigma2, p, lambda, trials, seed, beta, mu, eps0, opttol, max_iter and
 * alpha_bar (supremum of the extrapolation schedule, 0 for irl1 and ijt). */
LPE_API lpe_status lpe_config_get_double(const lpe_config *cfg, const char *key,
                                         double *out);
/* Resolved document as JSON text. */
LPE_API lpe_status lpe_config_to_json(const lpe_config *cfg, char **out);
LPE_API void lpe_config_destroy(lpe_config *cfg);

/* ---- problem instances ------------------------------------------------ */

/* Seeded instance with the configured m, n, K, sigma2 and seed. */
LPE_API lpe_status lpe_instance_generate(const lpe_config *cfg, lpe_instance **out);
/* f(x) = 0.5 ||A x - y||^2 from caller data. A is m x n, row-major.
 * x_true may be NULL. */
LPE_API lpe_status lpe_instance_create(size_t m, size_t n, const double *A,
                                       const double *y, const double *x_true,
                                       lpe_instance **out);
/* Directory written by lpe_instance_save; checksums are verified. */
LPE_API lpe_status lpe_instance_load(const char *dir, lpe_instance **out);
/* Writes A.bin, x_true.bin, y.bin and instance.json; with_csv adds CSV
 * copies of the three arrays. */
LPE_API lpe_status lpe_instance_save(const lpe_instance *inst, const char *dir,
                                     int with_csv);
LPE_API lpe_status lpe_instance_dims(const lpe_instance *inst, size_t *m, size_t *n);
/* Copies the ground truth into buf (length n). Fails if none is stored. */
LPE_API lpe_status lpe_instance_x_true(const lpe_instance *inst, double *buf,
                                       size_t len);
LPE_API void lpe_instance_destroy(lpe_instance *inst);

/* ---- solving ---------------------------------------------------------- */

/* Runs the configured solver. x0 may be NULL, in which case the config's
 * "x0" field decides: "gaussian" (seeded from the instance), "zero", or a
 * path to a vector file. A run that stops on a non-finite iterate still
 * returns LPE_OK; its termination reason is "numerical_failure". */
LPE_API lpe_status lpe_solve(const lpe_instance *inst, const lpe_config *cfg,
                             const double *x0, lpe_result **out);
LPE_API lpe_status lpe_result_converged(const lpe_result *res, int *out);
LPE_API lpe_status lpe_result_iterations(const lpe_result *res, int64_t *out);
/* "opttol_met", "max_iter" or "numerical_failure"; owned by the result. */
LPE_API lpe_status lpe_result_termination(const lpe_result *res, const char **out);
LPE_API lpe_status lpe_result_x(const lpe_result *res, double *buf, size_t len);
LPE_API lpe_status lpe_result_trace_rows(const lpe_result *res, size_t *out);
LPE_API lpe_status lpe_result_warning_count(const lpe_result *res, size_t *out);
LPE_API lpe_status lpe_result_warning(const lpe_result *res, size_t i, const char **out);
LPE_API lpe_status lpe_result_trace_csv(const lpe_result *res, char **out);
LPE_API lpe_status lpe_result_summary_json(const lpe_result *res, char **out);
/* Writes trace.csv, summary.json and x_final.bin into dir. */
LPE_API lpe_status lpe_result_write(const lpe_result *res, const char *dir);
LPE_API void lpe_result_destroy(lpe_result *res);

/* ---- experiments and diagnostics -------------------------------------- */

/* Runs the configured experiment (or alpha sweep when "alphas" is set) and
 * writes trials.csv, aggregate.json and mse_curve_<solver>.csv files.
 * threads = 0 uses the hardware concurrency. total and failed may be NULL. */
LPE_API lpe_status lpe_bench(const lpe_config *cfg, const char *out_dir,
                             unsigned threads, size_t *total, size_t *failed);

/* Diagnostics JSON for a trace CSV file. beta and alpha_bar come from cfg
 * (defaults when cfg is NULL). */
LPE_API lpe_status lpe_diagnose(const char *trace_csv_path, const lpe_config *cfg,
                                double tail_fraction, char **json_out);

#ifdef __cplusplus
}
#endif

#endif /* LPEIRL1_LPEIRL1_H */
