/*
 * libdrl: longest runs of equal divisor counts, their upper bounds, and
 * finite checks of the supporting inequalities.
 *
 * Plain C interface over the C++ core. Objects are opaque handles created
 * and destroyed through this API. Every fallible call returns a drl_status;
 * on failure drl_last_error() describes the most recent error on the
 * calling thread. Strings returned through `char **` are heap-allocated and
 * released with drl_string_free().
 */
#ifndef DRL_DRL_H
#define DRL_DRL_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define DRL_API __declspec(dllexport)
#else
#define DRL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum drl_status {
    DRL_OK = 0,
    DRL_E_INVALID_ARGUMENT = 1,
    DRL_E_DOMAIN = 2,
    DRL_E_CAPACITY = 3,
    DRL_E_CHECKPOINT_MISMATCH = 4,
    DRL_E_IO = 5,
    DRL_E_BUDGET = 6,
    DRL_E_BUFFER_TOO_SMALL = 7,
    DRL_E_INTERNAL = 99
} drl_status;

typedef enum drl_format { DRL_FORMAT_CSV = 0, DRL_FORMAT_JSON = 1 } drl_format;

DRL_API const char *drl_version(void);
DRL_API const char *drl_status_name(drl_status status);
DRL_API const char *drl_last_error(void);
DRL_API void drl_string_free(char *s);

/* ------------------------------------------------------------ arithmetic */

DRL_API drl_status drl_divisor_count(uint64_t n, uint64_t *out);
DRL_API drl_status drl_omega(uint64_t n, uint64_t *out);
DRL_API drl_status drl_big_omega(uint64_t n, uint64_t *out);
DRL_API drl_status drl_nu(uint64_t p, uint64_t n, uint64_t *out);
/* Writes up to `capacity` (prime, exponent) pairs; *count is always the full
 * number of distinct primes. DRL_E_BUFFER_TOO_SMALL when capacity < *count. */
DRL_API drl_status drl_factorize(uint64_t n, uint64_t *primes, uint32_t *exponents, size_t capacity, size_t *count);
/* Exact decimal strings. */
DRL_API drl_status drl_primorial(uint64_t n, char **out);
DRL_API drl_status drl_lcm_range(uint64_t n, char **out);

/* ------------------------------------------------------------ sieve */

typedef struct drl_run {
    uint64_t start;
    uint64_t length;
    uint64_t divisor_count;
} drl_run;

/* d(n) for n in [lo, hi); `out` must hold hi - lo entries. */
DRL_API drl_status drl_sieve_divisor_counts(uint64_t lo, uint64_t hi, uint32_t *out, size_t capacity);

typedef struct drl_scan_config {
    uint64_t lo;            /* first integer, normally 1 */
    uint64_t n;             /* last integer (inclusive) */
    uint64_t segment_width; /* 0 selects the default (2^20) */
    unsigned threads;       /* 0 selects 1 */
} drl_scan_config;

typedef struct drl_scan drl_scan;

DRL_API drl_status drl_scan_create(const drl_scan_config *config, drl_scan **out);
/* DRL_E_CHECKPOINT_MISMATCH when the file belongs to another configuration. */
DRL_API drl_status drl_scan_resume(const drl_scan_config *config, const char *checkpoint_path, drl_scan **out);
DRL_API void drl_scan_destroy(drl_scan *scan);
/* Processes at most max_segments segments (0 = no limit). */
DRL_API drl_status drl_scan_advance(drl_scan *scan, uint64_t max_segments, uint64_t *processed);
DRL_API int drl_scan_done(const drl_scan *scan);
DRL_API uint64_t drl_scan_next_lo(const drl_scan *scan);
DRL_API drl_status drl_scan_best(const drl_scan *scan, drl_run *out);
DRL_API drl_status drl_scan_save_checkpoint(const drl_scan *scan, const char *path);
DRL_API size_t drl_scan_milestone_count(const drl_scan *scan);
DRL_API drl_status drl_scan_milestone(const drl_scan *scan, size_t index, uint64_t *n, drl_run *best);
/* ℓ table ("N,ell_N,run_start,run_d") or JSON {"runs": [...], "census": [...]}. */
DRL_API drl_status drl_scan_render(const drl_scan *scan, drl_format format, char **out);
/* "length,first_start,count" */
DRL_API drl_status drl_scan_render_census(const drl_scan *scan, char **out);

/* Reads the ℓ table stored in a checkpoint without scanning. Returns
 * DRL_E_DOMAIN if no milestone at or beyond n has been reached yet. */
DRL_API drl_status drl_checkpoint_milestones(const char *checkpoint_path, uint64_t n, uint64_t *ns, drl_run *runs,
                                             size_t capacity, size_t *count);

/* ------------------------------------------------------------ bounds */

typedef struct drl_bound_params {
    double c;
    double c1;
    double c2;
    double eps;
} drl_bound_params;

typedef struct drl_bound_comparison {
    uint64_t n;
    uint64_t ell;
    double theorem1;
    double explicit_bound;
    double theorem2;
    int theorem1_ok;
    int explicit_ok;
    int theorem2_ok;
} drl_bound_comparison;

DRL_API drl_bound_params drl_bound_params_default(void);
/* 16 hex digits plus NUL. */
DRL_API drl_status drl_bound_params_digest(const drl_bound_params *params, char out[17]);
DRL_API drl_status drl_f_of_k(double k, double n, const drl_bound_params *params, double *out);
DRL_API drl_status drl_eq3_gap(double k, double n, const drl_bound_params *params, double *gap, int *vacuous);
DRL_API drl_status drl_bound_theorem1(double n, const drl_bound_params *params, double *out);
DRL_API drl_status drl_bound_explicit(double n, double eps, double *out);
DRL_API drl_status drl_bound_theorem2(double n, const drl_bound_params *params, double *out);
DRL_API drl_status drl_bounds_compare(uint64_t n, uint64_t ell, const drl_bound_params *params, drl_bound_comparison *out);
/* "N,ell,theorem1,explicit,theorem2,params_digest" rows, one per comparison. */
DRL_API drl_status drl_bounds_render_csv(const drl_bound_comparison *rows, size_t count, const drl_bound_params *params,
                                         char **out);

/* ------------------------------------------------------------ lemma checks */

typedef enum drl_lemma {
    DRL_LEMMA_L1 = 0,
    DRL_LEMMA_L2,
    DRL_LEMMA_L3,
    DRL_LEMMA_L4,
    DRL_LEMMA_L5,
    DRL_LEMMA_L6,
    DRL_LEMMA_EQ5,
    DRL_LEMMA_EQ8,
    DRL_LEMMA_RUNDIV
} drl_lemma;

typedef struct drl_verify_config {
    uint64_t max;  /* 0 selects the per-lemma default */
    uint64_t seed;
    unsigned threads;
} drl_verify_config;

typedef struct drl_lemma_report drl_lemma_report;

DRL_API drl_status drl_lemma_parse(const char *name, drl_lemma *out);
DRL_API const char *drl_lemma_name(drl_lemma lemma);
/* 1 for exact checkers, 0 for trend monitors (which never fail). */
DRL_API int drl_lemma_is_exact(drl_lemma lemma);
DRL_API drl_status drl_verify(drl_lemma lemma, const drl_verify_config *config, drl_lemma_report **out);
DRL_API void drl_lemma_report_destroy(drl_lemma_report *report);
DRL_API int drl_lemma_report_pass(const drl_lemma_report *report);
DRL_API size_t drl_lemma_report_violation_count(const drl_lemma_report *report);
DRL_API drl_status drl_lemma_report_json(const drl_lemma_report *report, char **out);

/* Scalar checks. */
DRL_API drl_status drl_check_lemma6(uint64_t n, double *lhs, uint64_t *rhs, int *pass);
DRL_API drl_status drl_check_eq8(uint64_t k, uint64_t *lhs, uint64_t *rhs, int *pass);
DRL_API drl_status drl_check_eq5(uint64_t p, uint64_t lo, uint64_t hi, uint64_t n, uint64_t *lhs, double *rhs, int *pass);

/* ------------------------------------------------------------ Jacobsthal */

typedef struct drl_jacobsthal_profile {
    uint64_t modulus;
    uint64_t j;
    uint64_t witness_start;
} drl_jacobsthal_profile;

typedef struct drl_jacobsthal_table drl_jacobsthal_table;

/* budget 0 selects the default (2·10^8 residues). */
DRL_API drl_status drl_jacobsthal_exact(const uint64_t *primes, size_t count, uint64_t budget, unsigned threads,
                                        drl_jacobsthal_profile *out);
DRL_API drl_status drl_jacobsthal_primorial(uint64_t m, uint64_t budget, unsigned threads, drl_jacobsthal_profile *out);
/* DRL_E_BUDGET when some prime M ≤ max_m is over budget and truncate is 0. */
DRL_API drl_status drl_jacobsthal_table_create(uint64_t max_m, uint64_t budget, unsigned threads, int truncate,
                                               drl_jacobsthal_table **out);
DRL_API void drl_jacobsthal_table_destroy(drl_jacobsthal_table *table);
DRL_API size_t drl_jacobsthal_table_size(const drl_jacobsthal_table *table);
DRL_API int drl_jacobsthal_table_truncated(const drl_jacobsthal_table *table);
DRL_API drl_status drl_jacobsthal_table_row(const drl_jacobsthal_table *table, size_t index, uint64_t *m,
                                            drl_jacobsthal_profile *profile);
/* "M,primorial,j,witness_start" or a JSON array of row objects. */
DRL_API drl_status drl_jacobsthal_table_render(const drl_jacobsthal_table *table, drl_format format, char **out);
/* *found = 0 when no element of [lo, hi) is coprime to M#. */
DRL_API drl_status drl_coprime_witness(uint64_t lo, uint64_t hi, uint64_t m, uint64_t *witness, int *found);
DRL_API drl_status drl_largest_m_with_j_at_most(uint64_t k, uint64_t *m, int *table_limited);

#ifdef __cplusplus
}
#endif

#endif /* DRL_DRL_H */
