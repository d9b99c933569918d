/* amoeba-scope C API.
 *
 * Opaque handles + integer status codes over the amoeba/coamoeba/contour
 * core.  Every function returns ASC_OK (0) on success or a nonzero status;
 * asc_last_error() returns a thread-local message for the most recent
 * failure on the calling thread.  Handles are created by *_parse functions
 * and released with the matching *_free (safe on NULL).
 */

#ifndef AMOEBASCOPE_H
#define AMOEBASCOPE_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

/* ---- status codes ------------------------------------------------------- */

enum {
    ASC_OK = 0,
    ASC_ERR_INVALID = 1,        /* bad argument / precondition */
    ASC_ERR_PARSE = 2,          /* literal text rejected (line/col in message) */
    ASC_ERR_DIMENSION = 3,
    ASC_ERR_EXCLUDED_PARAM = 4,
    ASC_ERR_NONCONVERGENCE = 5,
    ASC_ERR_DEGENERATE = 6,     /* degenerate restriction / polytope / linear */
    ASC_ERR_SINGULAR = 7,
    ASC_ERR_GRID_MISMATCH = 8,
    ASC_ERR_NOT_IN_IDEAL = 9,
    ASC_ERR_AMBIGUOUS_NORMAL = 10,
    ASC_ERR_ENTIRE_FAMILY = 11,
    ASC_ERR_NO_PINCH = 12,
    ASC_ERR_INSUFFICIENT_SAMPLES = 13,
    ASC_ERR_UNKNOWN_SCENARIO = 14,
    ASC_ERR_IO = 15,
    ASC_ERR_UNSUPPORTED = 16,
    ASC_ERR_INTERNAL = 99
};

/* fiber dimension estimates */
enum { ASC_FIBER_EMPTY = 0, ASC_FIBER_FINITE = 1, ASC_FIBER_POSDIM = 2 };

/* point classes */
enum {
    ASC_CLASS_OUTSIDE = 0,
    ASC_CLASS_INTERIOR = 1,
    ASC_CLASS_BOUNDARY = 2,
    ASC_CLASS_NONREGULAR = 3,
    ASC_CLASS_DEGENERATE = 4
};

const char* asc_version(void);
const char* asc_last_error(void);   /* "" when the last call succeeded */

/* ---- polynomials -------------------------------------------------------- */

typedef struct asc_poly asc_poly;

int  asc_poly_parse(const char* text, asc_poly** out);
void asc_poly_free(asc_poly* p);
int  asc_poly_dim(const asc_poly* p, int* out_dim);
/* z as interleaved (re, im) pairs, dim entries */
int  asc_poly_eval(const asc_poly* p, const double* z_reim,
                   double* out_re, double* out_im);
int  asc_gauss_degree(const asc_poly* p, long long* out_degree);

/* ---- curves ------------------------------------------------------------- */

typedef struct asc_curve asc_curve;

int  asc_curve_parse(const char* text, asc_curve** out);
void asc_curve_free(asc_curve* c);
int  asc_curve_dim(const asc_curve* c, int* out_dim);
/* out_reim: 2*dim doubles */
int  asc_curve_eval(const asc_curve* c, double t_re, double t_im,
                    double* out_reim);

/* ---- fiber scans / membership / classification (plane curves) ----------- */

/* clusters_reim: 4 doubles per cluster (z_re, z_im, w_re, w_im), capacity
 * `cap` clusters; *out_n_clusters is the true count even if it exceeds cap. */
int asc_fiber_scan(const asc_poly* p, double x1, double x2, int angles,
                   double tol_radial, int* out_dimension, int* out_n_clusters,
                   double* clusters_reim, int cap);

int asc_membership(const asc_poly* p, double x1, double x2, int angles,
                   int* out_member);

/* out_normal: mean inward normal over branches when verdict is
 * ASC_CLASS_BOUNDARY (2 doubles), zeros otherwise.  May be NULL. */
int asc_classify(const asc_poly* p, double x1, double x2, int* out_class,
                 double* out_normal);

/* CSV in ("x1,x2" rows) -> CSV out with verdicts. */
int asc_classify_csv(const asc_poly* p, const char* in_csv,
                     const char* out_csv);

/* Membership raster over [lo1,hi1]x[lo2,hi2]; writes <out_prefix>.rle and
 * <out_prefix>.json. */
int asc_raster(const asc_poly* p, const double window[4], int res, int angles,
               const char* out_prefix);

/* Contour sweep -> CSV. */
int asc_contour_csv(const asc_poly* p, const double window[4], int grid,
                    const char* out_csv);

/* Parametrized-curve contour over a (log|t|, arg t) window -> CSV. */
int asc_curve_contour_csv(const asc_curve* c, const double param_window[4],
                          int grid, const char* out_csv);

/* ---- pinch locator ------------------------------------------------------ */

/* out5: r_star, oscillation, x1, x2, (reserved 0) */
int asc_pinch_locate(const asc_curve* c, double r_lo, double r_hi,
                     double out5[5]);

/* ---- generator intersection gap ----------------------------------------- */

/* window: 2*dim doubles (lo1, hi1, lo2, hi2, ...); writes a JSON report. */
int asc_basis_gap(const asc_curve* c, const char* const* generators,
                  int n_generators, const double* window, int res,
                  int dilation, const char* out_json);

/* ---- scenarios ---------------------------------------------------------- */

/* config_json may be NULL or "" (defaults); seed/out_dir override the config
 * when nonzero / non-NULL.  On success writes outputs under out_dir and, when
 * metrics_buf is non-NULL, copies the metrics JSON (NUL-terminated,
 * truncated to cap). */
int asc_scenario_run(const char* name, const char* config_json,
                     const char* out_dir, uint64_t seed, char* metrics_buf,
                     size_t cap);

/* Newline-separated registered scenario names. */
int asc_scenario_list(char* buf, size_t cap);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* AMOEBASCOPE_H */
