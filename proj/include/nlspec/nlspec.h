#ifndef NLSPEC_H
#define NLSPEC_H

/* C interface to the nlspec solvers.
 *
 * Every call returns an nlspec_status; on failure the message is available
 * from nlspec_last_error() on the calling thread until the next call.
 * Handles are opaque and owned by the caller. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define NLSPEC_API __declspec(dllexport)
#else
#define NLSPEC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nlspec_status {
    NLSPEC_OK = 0,
    NLSPEC_ERR_CONFIG = 1,
    NLSPEC_ERR_SOLVER = 2,
    NLSPEC_ERR_STRUCTURE = 3
} nlspec_status;

typedef enum nlspec_method {
    NLSPEC_METHOD_SHOOT = 0,
    NLSPEC_METHOD_INVERSE_ITERATION = 1
} nlspec_method;

typedef struct nlspec_operator nlspec_operator;
typedef struct nlspec_result nlspec_result;

typedef struct nlspec_options {
    double rel_tol;
    double abs_tol;
    double max_step;   /* fraction of the interval length */
    double event_tol;
    int threads;
    uint64_t seed;     /* structure sampling */
    int samples;
} nlspec_options;

NLSPEC_API const char* nlspec_version(void);
NLSPEC_API const char* nlspec_last_error(void);
NLSPEC_API void nlspec_options_default(nlspec_options* opts);

/* kind: pucci_plus, pucci_minus (also "pucci+", "pucci-"). */
NLSPEC_API nlspec_status nlspec_operator_pucci(const char* kind, double lambda_min,
                                               double lambda_max, int dim,
                                               nlspec_operator** out);
/* a u'' + (N-1) b u'/r + c u' + d u with constant coefficients. */
NLSPEC_API nlspec_status nlspec_operator_linear(double a, double b, double c, double d, int dim,
                                                nlspec_operator** out);
/* coeffs holds count rows of (a, b, c, d). */
NLSPEC_API nlspec_status nlspec_operator_bellman(int take_max, const double* coeffs,
                                                 size_t count, int dim, nlspec_operator** out);
NLSPEC_API nlspec_status nlspec_operator_parse(const char* text, nlspec_operator** out);
NLSPEC_API nlspec_status nlspec_operator_load(const char* path, nlspec_operator** out);
/* Overrides the declared constants; NAN keeps the current value. */
NLSPEC_API nlspec_status nlspec_operator_set_constants(nlspec_operator* op, double lambda_min,
                                                       double lambda_max, double gamma,
                                                       double delta);
NLSPEC_API nlspec_status nlspec_operator_set_dim(nlspec_operator* op, int dim);
NLSPEC_API int nlspec_operator_dim(const nlspec_operator* op);
NLSPEC_API void nlspec_operator_destroy(nlspec_operator* op);

NLSPEC_API nlspec_status nlspec_evaluate(const nlspec_operator* op, double m, double ell,
                                         double p, double u, double r, double* out);
NLSPEC_API nlspec_status nlspec_invert_m(const nlspec_operator* op, double ell, double p,
                                         double u, double q, double r, double* out);

/* Commands. A result is produced on NLSPEC_OK; check_operator also produces
 * one when it returns NLSPEC_ERR_STRUCTURE, and abp_audit / dirichlet when
 * a certificate fails (NLSPEC_ERR_SOLVER). opts may be NULL. */
NLSPEC_API nlspec_status nlspec_check_operator(const nlspec_operator* op,
                                               const nlspec_options* opts, nlspec_result** out);
/* f holds n uniform samples on [a, b] (n = 1: constant). */
NLSPEC_API nlspec_status nlspec_dirichlet(const nlspec_operator* op, double a, double b,
                                          const double* f, size_t n, const nlspec_options* opts,
                                          nlspec_result** out);
NLSPEC_API nlspec_status nlspec_radial_dirichlet(const nlspec_operator* op, double R,
                                                 const double* f, size_t n,
                                                 const nlspec_options* opts,
                                                 nlspec_result** out);
/* sign: +1, -1, or 0 for both. */
NLSPEC_API nlspec_status nlspec_semi_eig(const nlspec_operator* op, double a, double b, int sign,
                                         nlspec_method method, const nlspec_options* opts,
                                         nlspec_result** out);
NLSPEC_API nlspec_status nlspec_spectrum(const nlspec_operator* op, double a, double b, int n_max,
                                         const nlspec_options* opts, nlspec_result** out);
NLSPEC_API nlspec_status nlspec_radial_spectrum(const nlspec_operator* op, double R, int n_max,
                                                const nlspec_options* opts,
                                                nlspec_result** out);
NLSPEC_API nlspec_status nlspec_abp_audit(const nlspec_operator* op, double a, double b,
                                          const nlspec_options* opts, nlspec_result** out);

/* Direct numeric access without a result handle. */
NLSPEC_API nlspec_status nlspec_semi_eigenvalue(const nlspec_operator* op, double t1, double t2,
                                                int sign, double* lambda);

NLSPEC_API nlspec_status nlspec_result_status(const nlspec_result* res);
NLSPEC_API const char* nlspec_result_json(const nlspec_result* res);
NLSPEC_API const char* nlspec_result_summary(const nlspec_result* res);
NLSPEC_API size_t nlspec_result_csv_count(const nlspec_result* res);
NLSPEC_API const char* nlspec_result_csv_name(const nlspec_result* res, size_t index);
NLSPEC_API const char* nlspec_result_csv_text(const nlspec_result* res, size_t index);
/* Eigenvalue of the pair (n, sign) in a spectrum or semi-eig result. */
NLSPEC_API nlspec_status nlspec_result_lambda(const nlspec_result* res, int n, int sign,
                                              double* out);
/* format: "json", "csv" or "both". */
NLSPEC_API nlspec_status nlspec_result_write(const nlspec_result* res, const char* dir,
                                             const char* format);
NLSPEC_API void nlspec_result_destroy(nlspec_result* res);

#ifdef __cplusplus
}
#endif

#endif
