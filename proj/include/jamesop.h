#ifndef JAMESOP_H_
#define JAMESOP_H_

/*
 * C interface to the jamesop library. Objects are opaque handles released
 * with the matching *_free function. Every call returns a jo_status; on a
 * nonzero status, jo_last_error() describes the failure for the calling
 * thread. Strings returned through char** are heap allocated and must be
 * released with jo_string_free.
 */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define JO_API __declspec(dllexport)
#else
#define JO_API __attribute__((visibility("default")))
#endif

typedef enum jo_status {
  JO_OK = 0,
  JO_INVALID_ARGUMENT = 1,
  JO_CAP_EXCEEDED = 2,
  JO_PIPELINE_FAILURE = 3,
  JO_NOT_CONVERGED = 4,
  JO_INTERNAL = 5
} jo_status;

typedef enum jo_basis { JO_BASIS_E = 0, JO_BASIS_F = 1 } jo_basis;

typedef struct jo_vector jo_vector;
typedef struct jo_matrix jo_matrix;
typedef struct jo_operator jo_operator;
typedef struct jo_certificate jo_certificate;

typedef struct jo_config {
  uint64_t seed;
  double norm_tol;
  double solver_tol;
  double cert_tol;
  size_t oracle_cap;
  size_t walsh_cap;
} jo_config;

JO_API const char* jo_version(void);
JO_API const char* jo_last_error(void);
JO_API void jo_string_free(char* s);
JO_API void jo_config_default(jo_config* config);

/* Vectors: JSON {basis, p, inner_dim, coeffs}. */
JO_API jo_status jo_vector_parse(const char* json, jo_vector** out);
JO_API jo_status jo_vector_create(jo_basis basis, const double* coeffs, size_t count, double p,
                                  size_t inner_dim, jo_vector** out);
JO_API void jo_vector_free(jo_vector* v);
JO_API jo_status jo_vector_to_json(const jo_vector* v, char** out);
JO_API jo_status jo_vector_convert(const jo_vector* v, jo_vector** out);

/* Norm with its certifying chain (1-based indices, count written to
 * *chain_len, at most chain_cap entries copied). */
JO_API jo_status jo_norm(const jo_vector* v, double* value, size_t* chain, size_t chain_cap,
                         size_t* chain_len);
/* Exhaustive oracle; JO_CAP_EXCEEDED beyond `cap` positions. */
JO_API jo_status jo_norm_oracle(const jo_vector* v, size_t cap, double* value, size_t* chain,
                                size_t chain_cap, size_t* chain_len);

/* Matrices: JSON array of rows, {"matrix": rows}, or CSV with a header. */
JO_API jo_status jo_matrix_parse(const char* text, jo_matrix** out);
JO_API void jo_matrix_free(jo_matrix* m);
JO_API jo_status jo_matrix_to_json(const jo_matrix* m, char** out);
JO_API jo_status jo_matrix_to_csv(const jo_matrix* m, char** out);
JO_API jo_status jo_regular_norm(const jo_matrix* m, double tol, double* value);
JO_API jo_status jo_spectral_norm(const jo_matrix* m, double tol, double* value);

/* One row of the Walsh table as JSON: n, spectral, regular, ratio,
 * expected, residual and the iterative cross-checks. */
JO_API jo_status jo_walsh(int n, double tol, int cap, char** out);

/* Operator matrices: JSON {scalar_part, compact_part}; a plain matrix is
 * read as the scalar part. */
JO_API jo_status jo_operator_parse(const char* text, jo_operator** out);
JO_API void jo_operator_free(jo_operator* op);
JO_API jo_status jo_operator_to_json(const jo_operator* op, char** out);

JO_API jo_status jo_certify(const jo_matrix* s, const jo_operator* w, double delta,
                            const jo_config* config, jo_certificate** out);
JO_API jo_status jo_certificate_parse(const char* json, jo_certificate** out);
JO_API void jo_certificate_free(jo_certificate* c);
JO_API jo_status jo_certificate_to_json(const jo_certificate* c, char** out);
/* The scalar fields only (bound, target, constants, m, l, notes). */
JO_API jo_status jo_certificate_summary(const jo_certificate* c, char** out);
JO_API jo_status jo_certificate_verify(const jo_certificate* c, double tol, int* ok,
                                       double* recomputed, char** detail);

/* Runs a suite ("core", "blocks", "lifted", "all") and returns its JSON
 * report; *passed is 1 iff every criterion passed. */
JO_API jo_status jo_run_suite(const char* name, const jo_config* config, int include_timing,
                              char** report, int* passed);
/* Same for a single criterion id 1..11. */
JO_API jo_status jo_run_criterion(int id, const jo_config* config, char** report, int* passed);

#ifdef __cplusplus
}
#endif

#endif /* JAMESOP_H_ */
