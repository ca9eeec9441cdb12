/* qpc - C API for the prime-variable quadratic form toolkit.
 *
 * All functionality sits behind opaque handles and status codes. Strings
 * returned through `char**` are heap-allocated JSON/CSV documents; release
 * them with qpc_string_free. Handles are released with qpc_form_free.
 * qpc_last_error() returns a thread-local detail message for the most recent
 * failing call on this thread.
 */
#ifndef QPC_H
#define QPC_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define QPC_API __declspec(dllexport)
#else
#define QPC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct qpc_form qpc_form;

typedef enum qpc_status {
    QPC_OK = 0,
    QPC_ERR_INVALID_ARGUMENT = 1,
    QPC_ERR_PARSE = 2,
    QPC_ERR_BUDGET_EXCEEDED = 3,
    QPC_ERR_UNSUPPORTED_SIZE = 4,
    QPC_ERR_INVARIANT_VIOLATED = 5,
    QPC_ERR_NOT_STABILIZED = 6,
    QPC_ERR_INTERNAL = 7
} qpc_status;

QPC_API const char* qpc_status_name(qpc_status status);
QPC_API const char* qpc_last_error(void);
QPC_API void qpc_string_free(char* s);

/* Parse {"n":..., "matrix":[[...]], "t":...}; t is optional. */
QPC_API qpc_status qpc_form_parse_json(const char* json_text, qpc_form** out);
QPC_API void qpc_form_free(qpc_form* form);

QPC_API int qpc_form_dim(const qpc_form* form);
/* 1 if the document carried a t, writing it to *t_out. */
QPC_API int qpc_form_default_t(const qpc_form* form, int64_t* t_out);

/* Rank, off-diagonal rank, classification, structure verification, witness. */
QPC_API qpc_status qpc_analyze_json(const qpc_form* form, char** json_out);

/* chi_p table and obstruction list over primes p <= pmax. */
QPC_API qpc_status qpc_local_json(const qpc_form* form, int64_t t, int64_t pmax, char** json_out);

QPC_API qpc_status qpc_series_json(const qpc_form* form, int64_t t, double tol, char** json_out);

QPC_API qpc_status qpc_integral_json(const qpc_form* form, int64_t t, double X, uint64_t samples,
                                     uint64_t seed, char** json_out);

QPC_API qpc_status qpc_count_json(const qpc_form* form, int64_t t, int64_t X, int threads,
                                  double budget, char** json_out);

QPC_API qpc_status qpc_predict_json(const qpc_form* form, int64_t t, double X, double tol,
                                    uint64_t samples, uint64_t seed, int threads,
                                    char** json_out);

/* One row per X; json_out carries both structured rows and the CSV text. */
QPC_API qpc_status qpc_compare_json(const qpc_form* form, int64_t t, const double* Xs, size_t nXs,
                                    double tol, uint64_t samples, uint64_t seed, int threads,
                                    char** json_out);

/* Arc dissection table; X and Q are decimal or "a/b" strings, kept exact. */
QPC_API qpc_status qpc_arcs_json(const char* X, const char* Q, char** json_out);

QPC_API qpc_status qpc_check_lemmas_json(uint64_t seed, char** json_out);

#ifdef __cplusplus
}
#endif

#endif /* QPC_H */
