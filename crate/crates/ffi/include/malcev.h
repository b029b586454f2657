#ifndef MALCEV_H
#define MALCEV_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes. Values 2 to 5 agree with the command-line exit codes.
 */
typedef enum MalcevStatus {
  MALCEV_STATUS_OK = 0,
  MALCEV_STATUS_NULL_ARGUMENT = 1,
  MALCEV_STATUS_PARSE = 2,
  MALCEV_STATUS_VALIDATION = 3,
  MALCEV_STATUS_PRECONDITION = 4,
  MALCEV_STATUS_INCONCLUSIVE = 5,
  MALCEV_STATUS_INVALID_UTF8 = 6,
  MALCEV_STATUS_PANIC = 7,
} MalcevStatus;

/**
 * An algebra with its form, plus any operator or extension data it carries.
 */
typedef struct MalcevAlgebra MalcevAlgebra;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failing call on this thread. Empty after a success.
 * The pointer stays valid until the next call on the same thread.
 */
const char *malcev_last_error_message(void);

/**
 * Builds a catalog entry. `m` may be null when `m_len` is 0.
 *
 * # Safety
 * `name` must be a nul-terminated string; `m` must point to `m_len` values;
 * `out` must be writable.
 */
enum MalcevStatus malcev_catalog_get(const char *name,
                                     size_t n,
                                     const int64_t *m,
                                     size_t m_len,
                                     size_t p,
                                     size_t q,
                                     struct MalcevAlgebra **out);

/**
 * Parses and validates an algebra document.
 *
 * # Safety
 * `text` must be a nul-terminated string; `out` must be writable.
 */
enum MalcevStatus malcev_from_document(const char *text, struct MalcevAlgebra **out);

/**
 * Canonical document text; free with [`malcev_string_free`].
 *
 * # Safety
 * `alg` must be a live handle; `out` must be writable.
 */
enum MalcevStatus malcev_to_document(const struct MalcevAlgebra *alg, char **out);

/**
 * # Safety
 * `s` must come from this library, or be null.
 */
void malcev_string_free(char *s);

/**
 * # Safety
 * `alg` must come from this library, or be null.
 */
void malcev_algebra_free(struct MalcevAlgebra *alg);

/**
 * # Safety
 * `alg` must be a live handle; `even` and `odd` must be writable.
 */
enum MalcevStatus malcev_dims(const struct MalcevAlgebra *alg, size_t *even, size_t *odd);

/**
 * # Safety
 * `alg` must be a live handle; `passed` must be writable.
 */
enum MalcevStatus malcev_check_malcev(const struct MalcevAlgebra *alg, bool *passed);

/**
 * # Safety
 * `alg` must be a live handle; `passed` must be writable.
 */
enum MalcevStatus malcev_check_jacobi(const struct MalcevAlgebra *alg, bool *passed);

/**
 * All four form axioms: even, supersymmetric, non-degenerate, invariant.
 *
 * # Safety
 * `alg` must be a live handle; `passed` must be writable.
 */
enum MalcevStatus malcev_check_form(const struct MalcevAlgebra *alg, bool *passed);

/**
 * # Safety
 * `alg` must be a live handle; `even` and `odd` must be writable.
 */
enum MalcevStatus malcev_center_dims(const struct MalcevAlgebra *alg, size_t *even, size_t *odd);

/**
 * Odd reduction. The new handle carries the recovered extension data, so
 * [`malcev_extend_odd`] on it rebuilds the input in the adapted basis.
 *
 * # Safety
 * `alg` must be a live handle; `out` must be writable.
 */
enum MalcevStatus malcev_reduce_odd(const struct MalcevAlgebra *alg, struct MalcevAlgebra **out);

/**
 * Generalized double extension using the handle's extension data.
 *
 * # Safety
 * `alg` must be a live handle; `out` must be writable.
 */
enum MalcevStatus malcev_extend_odd(const struct MalcevAlgebra *alg, struct MalcevAlgebra **out);

/**
 * Decomposition tree as JSON. The tree is written even when some leaf is
 * inconclusive; the status is then `MALCEV_STATUS_INCONCLUSIVE`.
 *
 * # Safety
 * `alg` must be a live handle; `out` must be writable.
 */
enum MalcevStatus malcev_decompose_json(const struct MalcevAlgebra *alg, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MALCEV_H */
