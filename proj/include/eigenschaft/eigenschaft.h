/*
 * C interface to the eigenschaft library.
 *
 * Objects are opaque handles created by es_*_create / es_*_from_json /
 * builder functions and released with the matching es_*_free. Every fallible
 * call returns an es_status; on failure the thread-local message from
 * es_last_error() says what went wrong (for construction errors it names the
 * violated relation). Strings returned through char** out-parameters are
 * heap-allocated and must be released with es_string_free.
 *
 * Angles are radians throughout this interface.
 */
#ifndef EIGENSCHAFT_H
#define EIGENSCHAFT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(EIGENSCHAFT_BUILDING)
#    define ES_API __declspec(dllexport)
#  else
#    define ES_API __declspec(dllimport)
#  endif
#else
#  define ES_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum es_status {
  ES_OK = 0,
  ES_ERR_INVALID_ARGUMENT = 1, /* null pointer, bad enum value */
  ES_ERR_SHAPE = 2,
  ES_ERR_DOMAIN = 3,
  ES_ERR_NUMERIC = 4,
  ES_ERR_CONSTRUCTION = 5,
  ES_ERR_FIT = 6,
  ES_ERR_CONFIG = 7,
  ES_ERR_PARSE = 8,
  ES_ERR_INTERNAL = 9
} es_status;

typedef enum es_family {
  ES_FAMILY_COMPLEMENT = 0, /* I - 2 P_i for every projector */
  ES_FAMILY_TRACE_ZERO = 1  /* dim 4 only */
} es_family;

typedef enum es_state_kind { ES_KIND_PURE = 0, ES_KIND_MIXTURE = 1 } es_state_kind;

typedef struct es_matrix es_matrix;
typedef struct es_op es_op;
typedef struct es_state es_state;
typedef struct es_projectors es_projectors;

/* Default gate tolerance (1e-10). */
ES_API double es_default_tolerance(void);

ES_API const char* es_last_error(void);
ES_API const char* es_status_name(es_status status);
ES_API void es_string_free(char* s);

/* ---- matrices ---------------------------------------------------------- */

/* `re_im` holds rows*cols interleaved (re, im) pairs, row-major. */
ES_API es_status es_matrix_create(size_t rows, size_t cols, const double* re_im, es_matrix** out);
ES_API es_status es_matrix_from_json(const char* json, es_matrix** out);
ES_API es_status es_matrix_to_json(const es_matrix* m, char** out);
ES_API size_t es_matrix_rows(const es_matrix* m);
ES_API size_t es_matrix_cols(const es_matrix* m);
ES_API es_status es_matrix_get(const es_matrix* m, size_t i, size_t j, double* re, double* im);
ES_API es_status es_matrix_mul(const es_matrix* a, const es_matrix* b, es_matrix** out);
ES_API es_status es_matrix_kron(const es_matrix* a, const es_matrix* b, es_matrix** out);
ES_API es_status es_matrix_adjoint(const es_matrix* a, es_matrix** out);
/* Eigenvalues ascending into `values` (capacity n); eigenvectors as columns. */
ES_API es_status es_matrix_hermitian_eig(const es_matrix* a, double* values, es_matrix** vectors);
ES_API es_status es_matrix_is_involution(const es_matrix* a, double tol, int* involutive,
                                         double* residual);
ES_API void es_matrix_free(es_matrix* m);

/* ---- eigenschaft operators --------------------------------------------- */

ES_API es_status es_op_from_matrix(const es_matrix* m, double tol, es_op** out);
ES_API es_status es_op_from_json(const char* json, double tol, es_op** out);
ES_API es_status es_op_to_json(const es_op* h, char** out);
ES_API es_status es_op_matrix(const es_op* h, es_matrix** out);
ES_API size_t es_op_dim(const es_op* h);
ES_API int es_op_trace_class(const es_op* h);
ES_API void es_op_free(es_op* h);

ES_API es_status es_build_h2(double gamma_angle, double delta_phi, es_op** out);
ES_API es_status es_h2_elements(const es_op* h, double* alpha, double* beta, double* delta_phi);
/* alphas: dim values; phases: dim-1 independent phases. */
ES_API es_status es_build_from_diag(int dim, const double* alphas, int trace_sign,
                                    const double* phases, es_op** out);
/* `out` receives three handles. */
ES_API es_status es_build_kron_family(const es_op* h_a, const es_op* h_b, es_op** out);
ES_API es_status es_from_projector_flip(const es_projectors* ps, const int* signs, size_t n,
                                        es_op** out);

/* Validation report as a flat JSON object; `passes` (may be NULL) is set when
 * the Hermiticity and involution residuals are within tol. */
ES_API es_status es_validate(const es_matrix* m, double tol, char** report_json, int* passes);

/* ---- projector sets ---------------------------------------------------- */

ES_API es_status es_projectors_from_json(const char* json, double tol, es_projectors** out);
ES_API es_status es_projectors_from_unitary(const es_matrix* u, double tol, es_projectors** out);
ES_API es_status es_projectors_to_json(const es_projectors* ps, char** out);
ES_API size_t es_projectors_dim(const es_projectors* ps);
/* `signs` receives dim values. */
ES_API es_status es_to_projectors(const es_op* h, es_projectors** out, int* signs);
/* Writes at most `capacity` handles into `out`; `count` gets the family size. */
ES_API es_status es_complement_family(const es_projectors* ps, es_family family, es_op** out,
                                      size_t capacity, size_t* count);
ES_API es_status es_algebra_table(const es_op* const* family, size_t n, char** table_json);
ES_API void es_projectors_free(es_projectors* ps);

/* ---- states and density matrices --------------------------------------- */

ES_API es_status es_state_create(size_t dim, const double* re_im, es_state** out);
ES_API es_status es_state_from_json(const char* json, es_state** out);
ES_API es_status es_state_to_json(const es_state* s, char** out);
ES_API size_t es_state_dim(const es_state* s);
ES_API es_status es_state_get(const es_state* s, size_t i, double* re, double* im);
ES_API es_status es_superpose(double c1_re, double c1_im, const es_state* s1, double c2_re,
                              double c2_im, const es_state* s2, es_state** out);
ES_API void es_state_free(es_state* s);

/* `residual` (may be NULL) receives NULL when the state is an eigenvector. */
ES_API es_status es_decompose(const es_matrix* a, const es_state* psi, double* mean,
                              double* dispersion, es_state** residual);
ES_API es_status es_decompose_json(const es_matrix* a, const es_state* psi, char** out);
ES_API es_status es_density_from_state(const es_state* psi, int truncate, es_matrix** out);
ES_API es_status es_diagonal_truncate(const es_matrix* rho, es_matrix** out);
ES_API es_status es_classify(const es_matrix* rho, es_state_kind* kind, double* purity,
                             double* rho_dispersion);
ES_API es_status es_classify_json(const es_matrix* rho, char** out);

/* ---- dynamics ---------------------------------------------------------- */

ES_API es_status es_evolve_h2(const es_op* h, double omega1, double omega2, double t, es_op** out);
/* `delta_phi` receives n values wrapped to (-pi, pi]. */
ES_API es_status es_beat_trace(const es_op* h, double omega1, double omega2, const double* times,
                               size_t n, double* delta_phi);
ES_API es_status es_beat_trace_csv(const es_op* h, double omega1, double omega2,
                                   const double* times, size_t n, char** csv);

/* ---- holographic detection --------------------------------------------- */

/* splitter may be NULL for the Hadamard splitter. */
ES_API es_status es_run_interferometer_csv(const es_state* state, const es_op* splitter,
                                           const double* phases, size_t n, double noise_sigma,
                                           uint64_t seed, char** csv);
ES_API es_status es_recover_state(const double* phases, const double* intensity_port1, size_t n,
                                  double* mag1, double* mag2, double* relative_phase,
                                  int* ambiguous);
ES_API es_status es_holographic_report_json(const es_state* state, const es_op* splitter,
                                            const double* phases, size_t n, double noise_sigma,
                                            uint64_t seed, char** out);

#ifdef __cplusplus
}
#endif

#endif /* EIGENSCHAFT_H */
