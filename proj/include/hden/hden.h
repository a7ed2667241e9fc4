/*
 * hden: exact hermitian representation densities.
 *
 * Every computation returns an hden_status. On success (and on
 * HDEN_VERIFY_FAILED, where the report explains the failure) *out receives a
 * heap string owned by the caller and released with hden_string_free. On any
 * other status *out is set to NULL and hden_last_error() describes the
 * problem; the message is per thread and stays valid until the next call.
 *
 * Partitions are passed as comma-separated parts, e.g. "8,3,2".
 */
#ifndef HDEN_H
#define HDEN_H

#include <stdint.h>

#if defined(_WIN32)
#define HDEN_API __declspec(dllexport)
#else
#define HDEN_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hden_status {
  HDEN_OK = 0,
  HDEN_VERIFY_FAILED = 1,
  HDEN_INVALID_ARGUMENT = 2,
  HDEN_BUDGET_EXCEEDED = 3,
  HDEN_TRUNCATION_UNSOUND = 4,
  HDEN_INTERNAL = 5
} hden_status;

typedef enum hden_format { HDEN_FORMAT_TEXT = 0, HDEN_FORMAT_JSON = 1 } hden_format;

typedef enum hden_density_engine { HDEN_ENGINE_REDUCE = 0, HDEN_ENGINE_DIRECT = 1 } hden_density_engine;

typedef struct hden_options {
  hden_format format;
  const char* q_eval;  /* rational such as "3" or "5/2"; NULL for none */
  int trace;           /* normalized: include the reduction trace */
  hden_density_engine engine;
  unsigned workers;      /* 0: HDEN_WORKERS, else hardware concurrency */
  int hard_cap;          /* <= 0: largest part of the target + 2 */
  int zero_tail_window;  /* <= 0: 2 */
} hden_options;

typedef struct hden_engine hden_engine;

HDEN_API const char* hden_version(void);
HDEN_API void hden_options_init(hden_options* options);

HDEN_API hden_engine* hden_engine_new(void);
HDEN_API void hden_engine_free(hden_engine* engine);
/* Drops memoized densities. */
HDEN_API void hden_engine_clear(hden_engine* engine);

HDEN_API const char* hden_last_error(void);
HDEN_API void hden_string_free(char* s);

/* Densities. options may be NULL for defaults. */
HDEN_API hden_status hden_alpha(hden_engine* engine, const char* xi, const char* lambda, const hden_options* options,
                                char** out);
HDEN_API hden_status hden_normalized(hden_engine* engine, const char* xi, const char* lambda,
                                     const hden_options* options, char** out);
/* alpha(A_xi, A_lambda) through the generic relation rewrite. */
HDEN_API hden_status hden_alpha_generic(hden_engine* engine, const char* xi, const char* lambda,
                                        const hden_options* options, char** out);
HDEN_API hden_status hden_self_density(hden_engine* engine, const char* xi, const hden_options* options, char** out);

/* Derived density A'_0000(A_b), b of length 4 with a strictly largest first part. */
HDEN_API hden_status hden_derivative(hden_engine* engine, const char* b, const hden_options* options, char** out);
/* Intersection number on N^1(1,1) for a Gram class b of length 2. */
HDEN_API hden_status hden_intersect(hden_engine* engine, const char* b, const hden_options* options, char** out);

/* Sweeps; HDEN_VERIFY_FAILED when any check fails. */
/* s <= 0 sweeps every s (or takes it from xi); lambda parts range over
 * [lambda_min, lambda_max], and lambda_min = 0 is a deliberate negative control. */
HDEN_API hden_status hden_verify_theorem(hden_engine* engine, int n, int s, const char* xi, int part_max,
                                         int lambda_min, int lambda_max, const hden_options* options, char** out);
HDEN_API hden_status hden_verify_corollary(hden_engine* engine, int n, const char* symbol_values, int b_max,
                                           const hden_options* options, char** out);
HDEN_API hden_status hden_verify_identity(hden_engine* engine, int max_part, const hden_options* options, char** out);
HDEN_API hden_status hden_verify_conjecture(hden_engine* engine, const char* b, const hden_options* options,
                                            char** out);
/* Randomized agreement: rule engine against direct evaluation. */
HDEN_API hden_status hden_verify_engine(hden_engine* engine, unsigned count, int n_max, int part_max, uint64_t seed,
                                        const hden_options* options, char** out);
/* Randomized agreement: generic rewrite against direct evaluation. */
HDEN_API hden_status hden_verify_generic(hden_engine* engine, unsigned count, int n_max, int part_max, uint64_t seed,
                                         const hden_options* options, char** out);

/* Counting oracle over (Z/p^d)[w]/(w^2 - c). nonresidue 0 picks the smallest
 * one; budget NULL keeps the default 2^36 (decimal string otherwise). */
HDEN_API hden_status hden_oracle(hden_engine* engine, const char* lambda_a, const char* lambda_b, uint32_t p, int d,
                                 uint32_t nonresidue, const char* budget, const hden_options* options, char** out);
/* Symbolic alpha at q = p against the oracle. d <= 0 picks max part of lambda_b + 1. */
HDEN_API hden_status hden_crosscheck(hden_engine* engine, const char* lambda_a, const char* lambda_b, uint32_t p,
                                     int d, uint32_t nonresidue, const char* budget, const hden_options* options,
                                     char** out);

#ifdef __cplusplus
}
#endif

#endif /* HDEN_H */
