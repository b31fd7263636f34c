/*
 * C interface to the posprod library: positive bilinear matrix products,
 * their sharp rank-one Loewner lower bounds, numerical certificates,
 * optimality witnesses, and the truncated Hilbert-space model.
 *
 * All objects are opaque handles created and destroyed through this API.
 * Every fallible call returns a pp_status; on failure pp_last_error()
 * carries a human-readable message (thread-local). Matrix data crosses the
 * boundary as row-major interleaved doubles [re0, im0, re1, im1, ...].
 */
#ifndef POSPROD_H
#define POSPROD_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define PP_API __declspec(dllexport)
#else
#define PP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pp_status {
  PP_OK = 0,
  PP_ERR_DIMENSION = 1,
  PP_ERR_NOT_HERMITIAN = 2,
  PP_ERR_NOT_PSD = 3,
  PP_ERR_PARAMETER = 4,
  PP_ERR_DEGENERATE = 5,
  PP_ERR_ILL_CONDITIONED = 6,
  PP_ERR_SIZE_LIMIT = 7,
  PP_ERR_IO = 8,
  PP_ERR_INTERNAL = 9
} pp_status;

typedef enum pp_kind {
  PP_KIND_HADAMARD = 0,
  PP_KIND_KRONECKER = 1,
  PP_KIND_CONVOLUTION = 2,
  PP_KIND_CUSTOM = 3
} pp_kind;

typedef struct pp_matrix pp_matrix;
typedef struct pp_param pp_param;
typedef struct pp_report pp_report;

PP_API const char* pp_version(void);
PP_API const char* pp_status_name(pp_status status);
/* Message of the most recent failing call on this thread. */
PP_API const char* pp_last_error(void);

/* Size cap for created matrices (per side); default 256. */
PP_API pp_status pp_set_max_side(size_t side);
PP_API size_t pp_max_side(void);

/* ---- matrices ---------------------------------------------------------- */

PP_API pp_status pp_matrix_create(size_t rows, size_t cols,
                                  const double* interleaved,
                                  pp_matrix** out);
PP_API void pp_matrix_free(pp_matrix* m);
PP_API size_t pp_matrix_rows(const pp_matrix* m);
PP_API size_t pp_matrix_cols(const pp_matrix* m);
/* Fills 2*rows*cols doubles. */
PP_API pp_status pp_matrix_copy_data(const pp_matrix* m, double* interleaved);
PP_API pp_status pp_matrix_random_gaussian(size_t rows, size_t cols,
                                           uint64_t seed, pp_matrix** out);
PP_API pp_status pp_matrix_random_psd(size_t dim, size_t rank, uint64_t seed,
                                      pp_matrix** out);
PP_API pp_status pp_matrix_numeric_rank(const pp_matrix* m, size_t* out);

/* ---- products ---------------------------------------------------------- */

PP_API pp_status pp_param_hadamard(size_t n, pp_param** out);
PP_API pp_status pp_param_kronecker(size_t m, size_t n, pp_param** out);
PP_API pp_status pp_param_convolution(size_t n, pp_param** out);
PP_API pp_status pp_param_custom(size_t m, size_t n, size_t big_n,
                                 const pp_matrix* y, pp_param** out);
PP_API pp_status pp_param_combine(double alpha, const pp_param* p1,
                                  double beta, const pp_param* p2,
                                  pp_param** out);
PP_API void pp_param_free(pp_param* p);
PP_API void pp_param_dims(const pp_param* p, size_t* m, size_t* n,
                          size_t* big_n);
PP_API pp_status pp_param_matrix(const pp_param* p, pp_matrix** y_out);
PP_API pp_status pp_param_rank(const pp_param* p, size_t* out);

/* A (star) B through the parameter matrix. */
PP_API pp_status pp_eval(const pp_param* p, const pp_matrix* a,
                         const pp_matrix* b, pp_matrix** out);
/* Classical products from their entry formulas (kind != PP_KIND_CUSTOM). */
PP_API pp_status pp_direct_eval(pp_kind kind, const pp_matrix* a,
                                const pp_matrix* b, pp_matrix** out);

/* ---- reports ----------------------------------------------------------- */

PP_API void pp_report_free(pp_report* r);
/* JSON document describing the result; owned by the report handle. */
PP_API const char* pp_report_json(const pp_report* r);
/* 1 certified, 0 violated, -1 when the report carries no verdict. */
PP_API int pp_report_certified(const pp_report* r);
PP_API double pp_report_diff_eig_min(const pp_report* r);
/* Matrices attached to the report ("L", "M", "A", "B", "T_check", "U0"). */
PP_API pp_status pp_report_matrix(const pp_report* r, const char* key,
                                  pp_matrix** out);

/* ---- bounds, certificates, witnesses ----------------------------------- */

PP_API pp_status pp_lower_bound(const pp_param* p, const pp_matrix* a,
                                const pp_matrix* b, double tol, int trials,
                                uint64_t seed, pp_report** out);
PP_API pp_status pp_certify(const pp_param* p, const pp_matrix* a,
                            const pp_matrix* b, double tol, int trials,
                            uint64_t seed, pp_report** out);
PP_API pp_status pp_witness(const pp_param* p, size_t component, size_t beta,
                            int trials, uint64_t seed, pp_report** out);
PP_API pp_status pp_loewner_geq(const pp_matrix* lhs, const pp_matrix* rhs,
                                double tol, pp_report** out);

/* ---- Hilbert model ----------------------------------------------------- */

PP_API pp_status pp_hilbert_slice(const pp_matrix* t, size_t dk, size_t dh1,
                                  size_t dh2, size_t i, size_t j,
                                  pp_matrix** out);
PP_API pp_status pp_hilbert_eval(const pp_matrix* t, size_t dk, size_t dh1,
                                 size_t dh2, const pp_matrix* p,
                                 const pp_matrix* q, pp_matrix** out);
PP_API pp_status pp_hilbert_certify(const pp_matrix* t, size_t dk, size_t dh1,
                                    size_t dh2, const pp_matrix* a,
                                    const pp_matrix* b, double tol, int trials,
                                    uint64_t seed, pp_report** out);
PP_API pp_status pp_tensor_check(const pp_matrix* a, const pp_matrix* b,
                                 double tol, pp_report** out);

/* ---- selftest ----------------------------------------------------------- */

typedef void (*pp_line_sink)(const char* line, void* user);
/* level: 0 quick, 1 full. Returns the number of failed suites. */
PP_API int pp_selftest(int level, uint64_t seed, pp_line_sink sink,
                       void* user);

#ifdef __cplusplus
}
#endif

#endif /* POSPROD_H */
