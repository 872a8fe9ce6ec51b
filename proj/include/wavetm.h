/* C interface to libwavetm.
 *
 * Every function returns a wtm_status; on failure wtm_last_error() gives a
 * message for the calling thread. Strings returned through char** are
 * heap-allocated and released with wtm_string_free. Handles are released
 * with their matching *_free function; passing NULL to a free is a no-op.
 * Complex values in JSON reports are [re, im] pairs.
 */
#ifndef WAVETM_H
#define WAVETM_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum wtm_status {
  WTM_OK = 0,
  WTM_INVALID_INPUT = 1,
  WTM_PARSE_ERROR = 2,
  WTM_DISTRIBUTIONAL_POTENTIAL = 3,
  WTM_INVALID_WAVENUMBER = 4,
  WTM_QUADRATURE_FAILURE = 5,
  WTM_NOT_PERIODIC = 6,
  WTM_PERIOD_MISMATCH = 7,
  WTM_INTEGRATION_FAILURE = 8,
  WTM_SPECTRAL_SINGULARITY = 9,
  WTM_WAVENUMBER_MISMATCH = 10,
  WTM_UNSUPPORTED_FAMILY = 11,
  WTM_DEGENERATE_DENOMINATOR = 12,
  WTM_NON_SMOOTH_DATA = 13,
  WTM_DEGENERATE_ALPHA_DENOMINATOR = 14,
  WTM_TAIL_NONCONVERGENCE = 15,
  WTM_IO_ERROR = 16,
  WTM_INTERNAL_ERROR = 100
} wtm_status;

typedef enum wtm_engine {
  WTM_ENGINE_ODE = 0,
  WTM_ENGINE_ANALYTIC = 1,
  WTM_ENGINE_BORN1 = 2,
  WTM_ENGINE_BORN2 = 3,
  WTM_ENGINE_BORNN = 4
} wtm_engine;

typedef struct wtm_complex {
  double re, im;
} wtm_complex;

typedef struct wtm_spec wtm_spec;
typedef struct wtm_data wtm_data;

const char* wtm_version(void);
const char* wtm_last_error(void);
/* "InvalidInput", "SpectralSingularity", ... */
const char* wtm_status_name(wtm_status status);
/* Nonzero for statuses caused by bad input rather than a failed computation. */
int wtm_status_is_input_error(wtm_status status);
void wtm_string_free(char* s);

/* Parses "ode", "analytic", "born1", "born2", "bornN". */
wtm_status wtm_engine_from_string(const char* name, wtm_engine* out);

/* Potential specs. */
wtm_status wtm_spec_parse(const char* json, wtm_spec** out);
wtm_status wtm_spec_load(const char* path, wtm_spec** out);
wtm_status wtm_spec_to_json(const wtm_spec* spec, char** out);
void wtm_spec_free(wtm_spec* spec);

/* Transfer matrix and amplitudes at one k. `order` is used by BORNN. */
wtm_status wtm_scatter(const wtm_spec* spec, double k, wtm_engine engine, int order,
                       double tol, char** report_json);

enum {
  WTM_FLAG_TRUNCATED = 1,   /* infinite-range tail cut at the truncation window */
  WTM_FLAG_NONCONVERGENT = 2 /* Born partial sum did not settle (BORNN) */
};

typedef struct wtm_scan_row {
  double k;
  double abs_rl, abs_rr, abs_tm1;
  wtm_status status; /* WTM_OK, or why the row is missing (magnitudes are inf) */
  unsigned flags;    /* WTM_FLAG_* bits */
} wtm_scan_row;

/* |R^l|, |R^r|, |T - 1| over a grid; rows come back in grid order.
 * threads <= 0 uses WAVETM_THREADS or the hardware count. */
wtm_status wtm_scan(const wtm_spec* spec, const double* k, size_t n, wtm_engine engine,
                    int order, double tol, int threads, wtm_scan_row* rows);

typedef struct wtm_diagnostic {
  wtm_complex e_plus, e_minus; /* +-sqrt(1 - v/k^2) */
  int exceptional;             /* eigenvalues coalesce */
  double pseudo_hermitian_residual;
  double eigenvector_condition; /* inf at coalescence */
} wtm_diagnostic;

/* Support interval, or the truncation window of an infinite-range family. */
wtm_status wtm_spec_support(const wtm_spec* spec, double* x_min, double* x_max);

/* Eigenvalue diagnostics of the two-level Hamiltonian at position x. */
wtm_status wtm_diagnose(const wtm_spec* spec, double k, double x, wtm_diagnostic* out);

/* Born terms of orders 1..order and their partial sum. */
wtm_status wtm_born(const wtm_spec* spec, double k, int order, double tol, int cross_check,
                    char** report_json);

/* Mode classification plus verification of each prediction with the
 * given engine (ODE or BORN2). */
wtm_status wtm_invisibility(const wtm_spec* spec, int j_max, wtm_engine engine,
                            int three_point, char** report_json);

/* First-order scattering data for inversion. kind: "M12", "M21", "R_right",
 * "R_left". */
wtm_status wtm_data_from_spec(const wtm_spec* spec, const char* kind, wtm_data** out);
wtm_status wtm_data_registered(const char* name, const char* const* keys,
                               const double* values, size_t n, wtm_data** out);
wtm_status wtm_data_tabulated(const char* kind, const double* k, const wtm_complex* values,
                              size_t n, wtm_data** out);
void wtm_data_free(wtm_data* data);
/* Comma-separated names accepted by wtm_data_registered. */
const char* wtm_registered_names(void);

typedef struct wtm_invert_options {
  double k_max;        /* 0: chosen from the decay of the data */
  int taper;           /* raised-cosine taper on the last 10% */
  int use_closed_form; /* use a registered closed-form inverse when present */
} wtm_invert_options;

void wtm_invert_options_default(wtm_invert_options* opt);

/* route: "m12", "m21", "rr", "rl". v_out has n entries. */
wtm_status wtm_invert(const wtm_data* data, const char* route, const double* x, size_t n,
                      const wtm_invert_options* opt, wtm_complex* v_out, char** meta_json);

/* Forward data from the spec, reconstruction, comparison on the support. */
wtm_status wtm_roundtrip(const wtm_spec* spec, const char* route, char** report_json);

/* Acceptance checks. fixtures_dir NULL uses the built-in fixture set;
 * ids NULL or n == 0 runs every check. Failing checks are reported in the
 * JSON ("pass": false), not through the status. */
wtm_status wtm_validate(const char* fixtures_dir, const int* ids, size_t n,
                        char** report_json);

#ifdef __cplusplus
}
#endif

#endif /* WAVETM_H */
