/* fdss: self-similar profile toolkit for the radial fast diffusion equation
 * with inhomogeneous source,
 *
 *     u_t = (u^m)_rr + (N-1)/r (u^m)_r + r^sigma u^p,
 *     N > 2, 0 < m < 1, sigma > -2, p > m.
 *
 * C API over an opaque-handle core. All functions return FDSS_OK on success;
 * on failure they return a status code and leave a human-readable message in
 * fdss_last_error() (thread-local). Strings returned through char** are
 * heap-allocated and must be released with fdss_string_free().
 */

#ifndef FDSS_H
#define FDSS_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#ifndef FDSS_API
#if defined(_WIN32)
#define FDSS_API __declspec(dllexport)
#else
#define FDSS_API __attribute__((visibility("default")))
#endif
#endif

typedef enum fdss_status {
  FDSS_OK = 0,
  FDSS_ERR_VALIDATION = 1, /* parameter/bound violations */
  FDSS_ERR_NUMERICAL = 2,  /* integration or derivation failures */
  FDSS_ERR_ARGUMENT = 3,   /* null pointers, bad enums, bad brackets */
} fdss_status;

FDSS_API const char* fdss_version(void);
FDSS_API const char* fdss_last_error(void);
/* name of the specific error condition (e.g. "DegenerateL"), "" if none */
FDSS_API const char* fdss_last_error_name(void);
FDSS_API void fdss_string_free(char* s);

/* ---------------------------------------------------------------- params */

typedef struct fdss_params fdss_params; /* validated (N, m, p, sigma) */

FDSS_API fdss_status fdss_params_create(double N, double m, double p, double sigma,
                                        fdss_params** out);
FDSS_API void fdss_params_free(fdss_params* ps);
FDSS_API fdss_status fdss_params_get(const fdss_params* ps, double* N, double* m, double* p,
                                     double* sigma);

typedef struct fdss_critical_exponents {
  double m_c, m_s;
  double p_L, p_F, p_c, p_s;
  double L, sigma_L;
} fdss_critical_exponents;

FDSS_API fdss_status fdss_critical_exponents_get(const fdss_params* ps,
                                                 fdss_critical_exponents* out);

typedef enum fdss_temporal_kind {
  FDSS_GLOBAL_DECAY = 0,
  FDSS_BLOWUP = 1,
  FDSS_EXTINCTION = 2,
  FDSS_GROWUP = 3,
} fdss_temporal_kind;

typedef struct fdss_similarity_exponents {
  double alpha, beta; /* stored positive */
  int sign;           /* +1 or -1 */
  fdss_temporal_kind kind;
} fdss_similarity_exponents;

FDSS_API fdss_status fdss_similarity_exponents_get(const fdss_params* ps, int sign,
                                                   fdss_similarity_exponents* out);

typedef enum fdss_m_class {
  FDSS_M_BELOW_SOBOLEV = 0,
  FDSS_M_SUBCRITICAL = 1,
  FDSS_M_SUPERCRITICAL = 2,
} fdss_m_class;

FDSS_API fdss_status fdss_classify_m(const fdss_params* ps, fdss_m_class* cls, int* at_m_s,
                                     int* at_m_c);

/* JSON dump of exponents + classification (the `exponents` CLI payload) */
FDSS_API fdss_status fdss_exponents_json(const fdss_params* ps, char** out);

/* --------------------------------------------------------------- selfmap */

typedef struct fdss_selfmap fdss_selfmap;

typedef enum fdss_constant_mode {
  FDSS_DERIVED_CONSTANTS = 0,
  FDSS_PRINTED_CONSTANTS = 1,
} fdss_constant_mode;

FDSS_API fdss_status fdss_selfmap_build(const fdss_params* ps, fdss_constant_mode mode,
                                        fdss_selfmap** out);
FDSS_API void fdss_selfmap_free(fdss_selfmap* sm);
FDSS_API fdss_status fdss_selfmap_get(const fdss_selfmap* sm, double* theta, double* C1,
                                      double* C2, double* build_residual,
                                      int* residual_warning);
FDSS_API fdss_status fdss_selfmap_target(const fdss_selfmap* sm, double* Nbar,
                                         double* sigmabar);

/* parameter part only: (N, m, p, sigma) -> (Nbar, sigmabar) */
FDSS_API fdss_status fdss_map_params(const fdss_params* ps, double* Nbar, double* sigmabar);

/* ubar_i = C1^-1 r_i^((N-2)/m) u_i at rbar_i = C2 r_i^theta, sorted by rbar.
 * rbar/ubar must hold n doubles. `inverse` != 0 applies the inverse map. */
FDSS_API fdss_status fdss_selfmap_map_snapshot(const fdss_selfmap* sm, const double* r,
                                               const double* u, size_t n, int inverse,
                                               double* rbar, double* ubar);

/* JSON with the map record and the closed-form identity residuals */
FDSS_API fdss_status fdss_transform_json(const fdss_params* ps, fdss_constant_mode mode,
                                         char** out);

/* -------------------------------------------------------------- profiles */

typedef struct fdss_profile fdss_profile;

typedef struct fdss_integrate_options {
  double xi0;            /* series handoff point (default 1e-4) */
  double xi_max;         /* right end of the integration window (default 1e3) */
  double rel_tol;        /* integrator tolerance (default 1e-10) */
  double cap;            /* unbounded-growth cutoff (default 1e12) */
  int points_per_decade; /* 0 = automatic from the exponent dictionary */
} fdss_integrate_options;

FDSS_API void fdss_integrate_options_default(fdss_integrate_options* opts);

typedef enum fdss_termination {
  FDSS_REACHED_XI_MAX = 0,
  FDSS_HIT_ZERO = 1,
  FDSS_EXCEEDED_CAP = 2,
  FDSS_STIFF_FAILURE = 3,
} fdss_termination;

typedef enum fdss_tail_kind {
  FDSS_TAIL_FAST_DECAY = 0,
  FDSS_TAIL_SLOW_DECAY = 1,
  FDSS_TAIL_CRITICAL_DECAY = 2,
  FDSS_TAIL_BOUNDED_POSITIVE_AT_ORIGIN = 3,
  FDSS_TAIL_FINITE_EXTINCTION_POINT = 4,
  FDSS_TAIL_UNBOUNDED = 5,
  FDSS_TAIL_UNRESOLVED = 6,
} fdss_tail_kind;

typedef struct fdss_tail_behavior {
  fdss_tail_kind kind;
  double fitted_exponent;
  double fitted_constant;
  int at_origin; /* 0 = behavior as xi -> infinity */
} fdss_tail_behavior;

FDSS_API fdss_status fdss_profile_integrate(const fdss_params* ps, int sign, double D,
                                            const fdss_integrate_options* opts,
                                            fdss_profile** out);
FDSS_API void fdss_profile_free(fdss_profile* prof);
FDSS_API fdss_status fdss_profile_size(const fdss_profile* prof, size_t* n);
/* copies out any subset; pass NULL for arrays you do not need */
FDSS_API fdss_status fdss_profile_data(const fdss_profile* prof, double* xi, double* f,
                                       double* h);
FDSS_API fdss_status fdss_profile_termination(const fdss_profile* prof,
                                              fdss_termination* term, double* xi_stop);
FDSS_API fdss_status fdss_profile_classify_tail(const fdss_profile* prof,
                                                fdss_tail_behavior* out);
FDSS_API fdss_status fdss_profile_residual(const fdss_profile* prof, double* max_relative);
/* bar-side profile through the map; the result solves the sign-flipped
 * equation at the source parameters */
FDSS_API fdss_status fdss_profile_map(const fdss_selfmap* sm, const fdss_profile* bar,
                                      fdss_profile** out);
FDSS_API fdss_status fdss_profile_json(const fdss_profile* prof, int with_tail,
                                       int with_residual, char** out);
FDSS_API fdss_status fdss_profile_csv(const fdss_profile* prof, char** out);

/* dominant-balance constant of the critical decay (s = -1 form) */
FDSS_API fdss_status fdss_critical_decay_constant(const fdss_params* ps, double* A,
                                                  double* printed_base, double* derived_base);

/* -------------------------------------------------------------- shooting */

typedef struct fdss_search_options {
  double D_min;        /* default 1e-4 */
  double D_max;        /* default 1e4 */
  int scan_points;     /* default 64 */
  double bracket_rel_tol; /* default 1e-10 */
  fdss_integrate_options integrate;
} fdss_search_options;

FDSS_API void fdss_search_options_default(fdss_search_options* opts);

typedef enum fdss_search_status {
  FDSS_SEARCH_FOUND = 0,
  FDSS_SEARCH_NOT_FOUND = 1,
  FDSS_SEARCH_NON_MONOTONE = 2,
} fdss_search_status;

FDSS_API fdss_status fdss_find_fast_decay(const fdss_params* ps, int sign,
                                          const fdss_search_options* opts,
                                          fdss_search_status* status, double* D_star,
                                          fdss_tail_behavior* tail);
FDSS_API fdss_status fdss_find_fast_decay_json(const fdss_params* ps, int sign,
                                               const fdss_search_options* opts, char** out);

/* one shot: integrate + classify at a single D; JSON result */
FDSS_API fdss_status fdss_shoot_json(const fdss_params* ps, int sign, double D,
                                     const fdss_integrate_options* opts, char** out);

/* p-sweep of the fast-decay search; CSV columns
 * p,D_star_or_nan,outcome,slope,constant */
FDSS_API fdss_status fdss_shoot_sweep_csv(double N, double m, double sigma, int sign,
                                          double p_lo, double p_hi, int steps,
                                          const fdss_search_options* opts, char** out);

typedef enum fdss_critical_p_kind {
  FDSS_CRITICAL_P0 = 0,
  FDSS_CRITICAL_P1 = 1,
  FDSS_CRITICAL_P2 = 2,
} fdss_critical_p_kind;

FDSS_API fdss_status fdss_estimate_critical_p(double N, double m, double sigma, int sign,
                                              fdss_critical_p_kind kind, double p_lo,
                                              double p_hi, const fdss_search_options* opts,
                                              double* bracket_lo, double* bracket_hi,
                                              char** notes_json);

/* --------------------------------------------------------------- regions */

FDSS_API fdss_status fdss_classify_region_json(const fdss_params* ps, char** out);
/* letter tag as a string ("A".."I", boundary names, "UndeterminedBand",
 * "NoTag"); behaviors joined by '|' */
FDSS_API fdss_status fdss_classify_region(const fdss_params* ps, char** tag,
                                          char** behaviors);
FDSS_API fdss_status fdss_region_grid_csv(double N, double sigma, double p_lo, double p_hi,
                                          double m_lo, double m_hi, int res_p, int res_m,
                                          char** csv, char** boundaries_json);

/* hot-spot / blow-up-set diagnostics of a classified profile */
FDSS_API fdss_status fdss_hotspot_json(const fdss_profile* prof, char** out);

/* ---------------------------------------------------------------- verify */

typedef enum fdss_verify_suite {
  FDSS_VERIFY_IDENTITIES = 0,
  FDSS_VERIFY_RESIDUAL = 1,
  FDSS_VERIFY_BALANCE = 2,
} fdss_verify_suite;

/* runs a verification suite; *pass is 1/0, JSON carries the details */
FDSS_API fdss_status fdss_verify(fdss_verify_suite suite, int samples,
                                 unsigned long long seed, int* pass, char** json);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* FDSS_H */
