#ifndef BSQ_H
#define BSQ_H

/* C interface to the spline quasi-interpolation library.
 *
 * All functions return a bsq_status; BSQ_OK means success.  On failure a
 * thread-local message is available through bsq_last_error().  Handles are
 * opaque and must be released with the matching destroy function.  Strings
 * returned through char** out-parameters are heap-allocated and must be
 * released with bsq_string_free().
 */

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bsq_status {
    BSQ_OK = 0,
    BSQ_ERROR_INVALID_ARGUMENT = -1, /* bad handle, bad config, rejected parameters */
    BSQ_ERROR_RUNTIME = -2,          /* infeasible request (empty interior, etc.) */
    BSQ_ERROR_CHECKS_FAILED = -3,    /* a run finished but its checks did not pass */
    BSQ_ERROR_IO = -4                /* artifact directory not writable */
} bsq_status;

typedef struct bsq_domain bsq_domain;
typedef struct bsq_field bsq_field;

/* scalar callback: x points at dim coordinates, ctx is caller state */
typedef double (*bsq_scalar_fn)(const double* x, int dim, void* ctx);

/* library version string, e.g. "1.0.0" */
const char* bsq_version(void);

/* thread-local description of the most recent failure in this thread */
const char* bsq_last_error(void);

void bsq_string_free(char* s);

/* ------------------------------------------------------------------ */
/* domains                                                             */

/* json_spec examples:
 *   {"type":"cube","dim":2}
 *   {"type":"box","lo":[0,0],"hi":[2,1]}
 *   {"type":"ball","center":[0.5,0.5],"radius":0.5}
 *   {"type":"lshape"}
 *   {"type":"staircase"}
 */
bsq_status bsq_domain_create(const char* json_spec, bsq_domain** out);
void bsq_domain_destroy(bsq_domain* D);

int bsq_domain_dim(const bsq_domain* D);

/* 1 when x (dim coordinates) lies in the open domain, 0 otherwise */
int bsq_domain_contains(const bsq_domain* D, const double* x);

/* ------------------------------------------------------------------ */
/* spline fields                                                       */

/* quasi-interpolant of f on D at dyadic level k: local polynomial degree
 * l-1, spline order m; requires 1 <= l <= m */
bsq_status bsq_field_interpolant(const bsq_domain* D, int k, int l, int m, bsq_scalar_fn f,
                                 void* ctx, bsq_field** out);

/* multiscale continuation of f beyond D: base level k0, finest level
 * k_max, smoothness alpha measured in L_p; the result evaluates to the
 * level-k_max quasi-interpolant on D and decays to zero away from it */
bsq_status bsq_field_extend(const bsq_domain* D, double alpha, double p, int m, int k0,
                            int k_max, bsq_scalar_fn f, void* ctx, bsq_field** out);

/* rewrite a field one level finer over D; the restriction to D is
 * unchanged */
bsq_status bsq_field_refine(const bsq_field* F, const bsq_domain* D, bsq_field** out);

void bsq_field_destroy(bsq_field* F);

bsq_status bsq_field_eval(const bsq_field* F, const double* x, double* out);

/* mixed partial derivative; lambda holds dim non-negative entries, each
 * at most the spline order */
bsq_status bsq_field_eval_deriv(const bsq_field* F, const double* x, const int* lambda,
                                double* out);

/* serialize to the textual field format / parse it back */
bsq_status bsq_field_dump(const bsq_field* F, char** out);
bsq_status bsq_field_load(const char* text, bsq_field** out);

/* ------------------------------------------------------------------ */
/* experiment runner                                                   */

/* command is one of: selftest, verify-domain, rates-approx,
 * rates-recovery, stechkin, extend.  config_json is the full run
 * configuration.  When out_dir is non-NULL the artifacts (report.json,
 * table.csv, field.dump) are written there.  When report_json_out is
 * non-NULL it receives the report payload.  seed overrides the config
 * seed when has_seed is nonzero.
 *
 * Returns BSQ_OK when every check passed, BSQ_ERROR_CHECKS_FAILED when
 * the run completed with failures, and BSQ_ERROR_INVALID_ARGUMENT /
 * BSQ_ERROR_RUNTIME when the config was rejected.
 */
bsq_status bsq_run(const char* command, const char* config_json, const char* out_dir,
                   uint64_t seed, int has_seed, char** report_json_out);

#ifdef __cplusplus
}
#endif

#endif /* BSQ_H */
