// Exercises the shared-library surface exactly as an external C consumer
// would: opaque handles, status codes, thread-local error strings.

#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "fdss.h"

static int failures = 0;

#define EXPECT(cond, msg)                                           \
  do {                                                              \
    if (!(cond)) {                                                  \
      fprintf(stderr, "FAIL %s:%d: %s\n", __FILE__, __LINE__, msg); \
      ++failures;                                                   \
    }                                                               \
  } while (0)

static void test_params_and_exponents(void) {
  fdss_params* ps = NULL;
  EXPECT(fdss_params_create(3.0, 0.25, 1.2, 0.0, &ps) == FDSS_OK, "create ok");

  fdss_critical_exponents ce;
  EXPECT(fdss_critical_exponents_get(ps, &ce) == FDSS_OK, "exponents ok");
  EXPECT(fabs(ce.p_s - 1.25) < 1e-14, "p_s");
  EXPECT(fabs(ce.L - 0.4) < 1e-14, "L");
  EXPECT(fabs(ce.p_F - 11.0 / 12.0) < 1e-14, "p_F");
  EXPECT(fabs(ce.sigma_L - 8.0 / 15.0) < 1e-13, "sigma_L");

  fdss_similarity_exponents se;
  EXPECT(fdss_similarity_exponents_get(ps, -1, &se) == FDSS_OK, "similarity ok");
  EXPECT(fabs(se.alpha - 5.0) < 1e-13, "alpha");
  EXPECT(fabs(se.beta - 2.375) < 1e-13, "beta");
  EXPECT(se.kind == FDSS_BLOWUP, "kind");

  fdss_m_class cls;
  int at_ms = -1, at_mc = -1;
  EXPECT(fdss_classify_m(ps, &cls, &at_ms, &at_mc) == FDSS_OK, "classify ok");
  EXPECT(cls == FDSS_M_SUBCRITICAL && !at_ms && !at_mc, "class value");

  char* json = NULL;
  EXPECT(fdss_exponents_json(ps, &json) == FDSS_OK, "json ok");
  EXPECT(strstr(json, "\"p_s\":1.25") != NULL, "json p_s");
  fdss_string_free(json);
  fdss_params_free(ps);

  // validation failures carry names and messages
  fdss_params* bad = NULL;
  EXPECT(fdss_params_create(2.0, 0.25, 1.2, 0.0, &bad) == FDSS_ERR_VALIDATION, "N=2");
  EXPECT(strcmp(fdss_last_error_name(), "NOutOfRange") == 0, "error name");
  EXPECT(strlen(fdss_last_error()) > 0, "error message");
  EXPECT(fdss_params_create(3.0, 0.25, 0.1, 0.0, &bad) == FDSS_ERR_VALIDATION, "p<m");
  EXPECT(strcmp(fdss_last_error_name(), "POutOfRange") == 0, "error name p");
}

static void test_selfmap(void) {
  fdss_params* ps = NULL;
  fdss_params_create(3.0, 0.25, 1.2, 0.0, &ps);

  fdss_selfmap* sm = NULL;
  EXPECT(fdss_selfmap_build(ps, FDSS_DERIVED_CONSTANTS, &sm) == FDSS_OK, "build ok");
  double theta = 0, C1 = 0, C2 = 0, resid = 1;
  int warn = 1;
  EXPECT(fdss_selfmap_get(sm, &theta, &C1, &C2, &resid, &warn) == FDSS_OK, "get ok");
  EXPECT(fabs(theta + 0.5) < 1e-14, "theta");
  EXPECT(fabs(C1 - 0.0625) < 1e-12, "C1");
  EXPECT(fabs(C2 - 1.0 / sqrt(2.0)) < 1e-12, "C2");
  EXPECT(resid < 1e-8 && !warn, "residual");
  double Nbar = 0, sigmabar = 0;
  EXPECT(fdss_selfmap_target(sm, &Nbar, &sigmabar) == FDSS_OK, "target ok");
  EXPECT(fabs(Nbar - 4.0) < 1e-13 && fabs(sigmabar - 1.6) < 1e-13, "target values");

  // displayed constants are degenerate at sigma = 0
  fdss_selfmap* smp = NULL;
  EXPECT(fdss_selfmap_build(ps, FDSS_PRINTED_CONSTANTS, &smp) == FDSS_ERR_VALIDATION,
         "printed mode at sigma=0");
  EXPECT(strcmp(fdss_last_error_name(), "PrintedConstantsDegenerate") == 0, "degeneracy name");

  // snapshot round trip
  const double r[4] = {0.5, 1.0, 2.0, 4.0};
  double u[4], rb[4], ub[4], r2[4], u2[4];
  int i;
  for (i = 0; i < 4; ++i) u[i] = 1.0 + 0.1 * r[i];
  EXPECT(fdss_selfmap_map_snapshot(sm, r, u, 4, 0, rb, ub) == FDSS_OK, "map snapshot");
  EXPECT(fdss_selfmap_map_snapshot(sm, rb, ub, 4, 1, r2, u2) == FDSS_OK, "unmap snapshot");
  for (i = 0; i < 4; ++i) {
    EXPECT(fabs(r2[i] - r[i]) < 1e-12 * r[i], "r round trip");
    EXPECT(fabs(u2[i] - u[i]) < 1e-12 * u[i], "u round trip");
  }

  double Nbar2 = 0, sigmabar2 = 0;
  EXPECT(fdss_map_params(ps, &Nbar2, &sigmabar2) == FDSS_OK, "map params");
  EXPECT(fabs(Nbar2 - 4.0) < 1e-13, "Nbar via map_params");

  char* json = NULL;
  EXPECT(fdss_transform_json(ps, FDSS_DERIVED_CONSTANTS, &json) == FDSS_OK, "transform json");
  EXPECT(strstr(json, "\"theta\":-0.5") != NULL, "json theta");
  EXPECT(strstr(json, "sobolev_symmetry") != NULL, "json identities");
  fdss_string_free(json);

  fdss_selfmap_free(sm);
  fdss_params_free(ps);
}

static void test_profiles(void) {
  fdss_params* ps = NULL;
  fdss_params_create(3.0, 0.25, 1.2, 0.0, &ps);

  fdss_integrate_options opts;
  fdss_integrate_options_default(&opts);
  EXPECT(opts.xi_max == 1e3 && opts.rel_tol == 1e-10, "defaults");

  fdss_profile* prof = NULL;
  EXPECT(fdss_profile_integrate(ps, 1, 1.0, &opts, &prof) == FDSS_OK, "integrate");
  size_t n = 0;
  EXPECT(fdss_profile_size(prof, &n) == FDSS_OK && n > 100, "size");

  double* xi = (double*)malloc(n * sizeof(double));
  double* f = (double*)malloc(n * sizeof(double));
  EXPECT(fdss_profile_data(prof, xi, f, NULL) == FDSS_OK, "data");
  EXPECT(xi[0] < xi[n - 1] && f[0] > 0, "data sanity");

  fdss_termination term;
  double xi_stop = -1;
  EXPECT(fdss_profile_termination(prof, &term, &xi_stop) == FDSS_OK, "termination");
  EXPECT(term == FDSS_REACHED_XI_MAX, "termination kind");

  fdss_tail_behavior tail;
  EXPECT(fdss_profile_classify_tail(prof, &tail) == FDSS_OK, "tail");
  EXPECT(tail.kind == FDSS_TAIL_SLOW_DECAY, "tail kind");
  EXPECT(fabs(tail.fitted_exponent + 2.0 / 0.95) < 0.05 * 2.11, "tail slope");

  double resid = 1.0;
  EXPECT(fdss_profile_residual(prof, &resid) == FDSS_OK, "residual");
  EXPECT(resid <= 1e-6, "residual value");

  /* map a bar-side profile through the transformation */
  fdss_params* bar = NULL;
  fdss_params_create(4.0, 0.25, 1.2, 1.6, &bar);
  fdss_integrate_options bopts = opts;
  bopts.xi0 = 1e-2;
  bopts.xi_max = 1.0;
  fdss_profile* bprof = NULL;
  EXPECT(fdss_profile_integrate(bar, 1, 1.0, &bopts, &bprof) == FDSS_OK, "bar integrate");
  fdss_selfmap* sm = NULL;
  fdss_selfmap_build(ps, FDSS_DERIVED_CONSTANTS, &sm);
  fdss_profile* mapped = NULL;
  EXPECT(fdss_profile_map(sm, bprof, &mapped) == FDSS_OK, "profile map");
  double mresid = 1.0;
  EXPECT(fdss_profile_residual(mapped, &mresid) == FDSS_OK, "mapped residual");
  EXPECT(mresid <= 1e-5, "mapped residual value");

  char* csv = NULL;
  EXPECT(fdss_profile_csv(prof, &csv) == FDSS_OK, "csv");
  EXPECT(strncmp(csv, "xi,f,h\n", 7) == 0, "csv header");
  fdss_string_free(csv);

  double A = 0, printed = 0, derived = 0;
  EXPECT(fdss_critical_decay_constant(ps, &A, &printed, &derived) == FDSS_OK, "A");
  EXPECT(fabs(A - pow(1.0 / 6.0, 4.0 / 3.0)) < 1e-12, "A value");
  EXPECT(printed < 0 && derived > 0, "base signs");

  fdss_profile_free(mapped);
  fdss_profile_free(bprof);
  fdss_profile_free(prof);
  fdss_selfmap_free(sm);
  fdss_params_free(bar);
  fdss_params_free(ps);
  free(xi);
  free(f);
}

static void test_search_and_regions(void) {
  fdss_params* ps = NULL;
  fdss_params_create(3.0, 0.25, 1.2, 0.0, &ps);

  fdss_search_options sopts;
  fdss_search_options_default(&sopts);
  fdss_search_status status;
  double D_star = 0;
  fdss_tail_behavior tail;
  EXPECT(fdss_find_fast_decay(ps, 1, &sopts, &status, &D_star, &tail) == FDSS_OK, "search");
  EXPECT(status == FDSS_SEARCH_FOUND, "found");
  EXPECT(tail.kind == FDSS_TAIL_FAST_DECAY, "fast tail");
  EXPECT(fabs(tail.fitted_exponent + 4.0) < 0.2, "slope");

  char* tag = NULL;
  char* behaviors = NULL;
  EXPECT(fdss_classify_region(ps, &tag, &behaviors) == FDSS_OK, "region");
  EXPECT(strcmp(tag, "E") == 0, "region tag");
  EXPECT(strstr(behaviors, "GlobalDecayFast") != NULL, "region behaviors");
  fdss_string_free(tag);
  fdss_string_free(behaviors);

  char* csv = NULL;
  char* overlay = NULL;
  EXPECT(fdss_region_grid_csv(3.0, 0.0, 1.0, 3.0, 0.01, 0.99, 12, 12, &csv, &overlay) ==
             FDSS_OK,
         "grid");
  EXPECT(strncmp(csv, "p,m,tag,behaviors\n", 18) == 0, "grid header");
  EXPECT(strstr(overlay, "\"p_s\"") != NULL, "overlay");
  fdss_string_free(csv);
  fdss_string_free(overlay);

  int pass = 0;
  char* json = NULL;
  EXPECT(fdss_verify(FDSS_VERIFY_IDENTITIES, 400, 7ull, &pass, &json) == FDSS_OK, "verify");
  EXPECT(pass == 1, "verify pass");
  EXPECT(strstr(json, "\"suite\":\"identities\"") != NULL, "verify json");
  fdss_string_free(json);

  fdss_params_free(ps);
}

int main(void) {
  EXPECT(strcmp(fdss_version(), "1.0.0") == 0, "version");
  test_params_and_exponents();
  test_selfmap();
  test_profiles();
  test_search_and_regions();
  if (failures) {
    fprintf(stderr, "%d C API checks failed\n", failures);
    return 1;
  }
  printf("C API: all checks passed\n");
  return 0;
}
