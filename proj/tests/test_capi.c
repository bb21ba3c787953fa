/* Exercises the shared library through the C header only. */
#include <math.h>
#include <stdio.h>
#include <string.h>

#include "jamesop.h"

static int failures = 0;

#define EXPECT(cond)                                              \
  do {                                                            \
    if (!(cond)) {                                                \
      fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                 \
    }                                                             \
  } while (0)

static void norms(void) {
  jo_vector* v = NULL;
  double value = 0.0;
  size_t chain[8], len = 0;
  EXPECT(jo_vector_parse("{\"basis\": \"F_BASIS\", \"coeffs\": [1, -1, 0]}", &v) == JO_OK);
  EXPECT(jo_norm(v, &value, chain, 8, &len) == JO_OK);
  EXPECT(fabs(value - 1.4142135623730951) < 1e-15);
  EXPECT(len == 3 && chain[0] == 1 && chain[1] == 2 && chain[2] == 3);
  EXPECT(jo_norm_oracle(v, 14, &value, NULL, 0, NULL) == JO_OK);
  EXPECT(fabs(value - 1.4142135623730951) < 1e-15);

  jo_vector* e = NULL;
  char* json = NULL;
  EXPECT(jo_vector_convert(v, &e) == JO_OK);
  EXPECT(jo_vector_to_json(e, &json) == JO_OK);
  EXPECT(strstr(json, "E_BASIS") != NULL);
  jo_string_free(json);
  jo_vector_free(e);
  jo_vector_free(v);

  double big[20];
  for (int i = 0; i < 20; ++i) big[i] = i % 3 - 1.0;
  EXPECT(jo_vector_create(JO_BASIS_E, big, 20, 2.0, 1, &v) == JO_OK);
  EXPECT(jo_norm_oracle(v, 14, &value, NULL, 0, NULL) == JO_CAP_EXCEEDED);
  EXPECT(strlen(jo_last_error()) > 0);
  EXPECT(jo_norm(v, &value, NULL, 0, NULL) == JO_OK);
  EXPECT(strlen(jo_last_error()) == 0);
  jo_vector_free(v);

  EXPECT(jo_vector_create(JO_BASIS_F, big, 2, 1.0, 1, &v) == JO_INVALID_ARGUMENT);
  EXPECT(jo_vector_parse("{", &v) == JO_INVALID_ARGUMENT);
  EXPECT(jo_norm(NULL, &value, NULL, 0, NULL) == JO_INVALID_ARGUMENT);
}

static void matrices(void) {
  jo_matrix* m = NULL;
  double value = 0.0;
  char* text = NULL;
  EXPECT(jo_matrix_parse("[[1, 1], [1, -1]]", &m) == JO_OK);
  EXPECT(jo_regular_norm(m, 1e-13, &value) == JO_OK);
  EXPECT(fabs(value - 2.0) < 1e-12);
  EXPECT(jo_spectral_norm(m, 1e-13, &value) == JO_OK);
  EXPECT(fabs(value - sqrt(2.0)) < 1e-12);
  EXPECT(jo_matrix_to_csv(m, &text) == JO_OK);
  jo_matrix_free(m);
  EXPECT(jo_matrix_parse(text, &m) == JO_OK);
  jo_string_free(text);
  EXPECT(jo_regular_norm(m, 1e-13, &value) == JO_OK);
  EXPECT(fabs(value - 2.0) < 1e-12);
  jo_matrix_free(m);

  EXPECT(jo_walsh(3, 1e-13, 10, &text) == JO_OK);
  EXPECT(strstr(text, "\"ratio\"") != NULL);
  jo_string_free(text);
  EXPECT(jo_walsh(0, 1e-13, 10, &text) == JO_INVALID_ARGUMENT);
  EXPECT(jo_walsh(11, 1e-13, 10, &text) == JO_CAP_EXCEEDED);
}

static void certificates(void) {
  jo_matrix* s = NULL;
  jo_operator* w = NULL;
  jo_certificate* c = NULL;
  jo_certificate* back = NULL;
  jo_config cfg;
  char *json = NULL, *summary = NULL, *detail = NULL;
  int ok = 0;
  double recomputed = 0.0;
  jo_config_default(&cfg);
  EXPECT(jo_matrix_parse("[[1, 0], [0, 1]]", &s) == JO_OK);
  EXPECT(jo_operator_parse("[[0, 0], [0, 0]]", &w) == JO_OK);
  EXPECT(jo_certify(s, w, 0.1, &cfg, &c) == JO_OK);
  EXPECT(jo_certificate_to_json(c, &json) == JO_OK);
  EXPECT(jo_certificate_parse(json, &back) == JO_OK);
  EXPECT(jo_certificate_verify(back, 1e-9, &ok, &recomputed, &detail) == JO_OK);
  EXPECT(ok == 1);
  EXPECT(recomputed > 0.8);
  EXPECT(jo_certificate_summary(c, &summary) == JO_OK);
  EXPECT(strstr(summary, "\"witness\"") == NULL);
  EXPECT(strstr(summary, "reported_bound") != NULL);
  EXPECT(jo_certify(s, w, 0.0, &cfg, &c) == JO_INVALID_ARGUMENT);
  jo_string_free(json);
  jo_string_free(summary);
  jo_string_free(detail);
  jo_certificate_free(back);
  jo_certificate_free(c);
  jo_operator_free(w);
  jo_matrix_free(s);
}

static void suites(void) {
  jo_config cfg;
  char *a = NULL, *b = NULL;
  int passed = 0;
  jo_config_default(&cfg);
  EXPECT(jo_run_suite("nope", &cfg, 0, &a, &passed) == JO_INVALID_ARGUMENT);
  EXPECT(jo_run_criterion(1, &cfg, &a, &passed) == JO_OK);
  EXPECT(passed == 1);
  jo_string_free(a);
  /* Reports without timing are byte-identical for a fixed seed. */
  EXPECT(jo_run_suite("core", &cfg, 0, &a, &passed) == JO_OK);
  EXPECT(jo_run_suite("core", &cfg, 0, &b, &passed) == JO_OK);
  EXPECT(strcmp(a, b) == 0);
  jo_string_free(a);
  jo_string_free(b);
  cfg.norm_tol = -1.0;
  EXPECT(jo_run_criterion(1, &cfg, &a, &passed) == JO_INVALID_ARGUMENT);
}

int main(void) {
  EXPECT(strcmp(jo_version(), "0.1.0") == 0);
  norms();
  matrices();
  certificates();
  suites();
  if (failures != 0) fprintf(stderr, "%d failed expectations\n", failures);
  return failures == 0 ? 0 : 1;
}
