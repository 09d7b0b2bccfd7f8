/* C interface to the pmsq magic-square library. */

#ifndef PMSQ_H
#define PMSQ_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible entry point.
 */
typedef enum PmsqStatus {
  PmsqStatus_Ok = 0,
  /**
   * A row or column sum differs from the rest.
   */
  PmsqStatus_NotMagic = 1,
  /**
   * Operands have incompatible orders.
   */
  PmsqStatus_OrderMismatch = 2,
  /**
   * Malformed JSON, a non-integer carrier, or a non-square matrix.
   */
  PmsqStatus_Parse = 3,
  /**
   * A value does not fit in the requested fixed-width type.
   */
  PmsqStatus_Overflow = 4,
  /**
   * A required pointer argument was null.
   */
  PmsqStatus_NullPointer = 5,
} PmsqStatus;

/**
 * Opaque handle to a verified square.
 */
typedef struct PmsqSquare PmsqSquare;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the most recent failure on this thread. The pointer is
 * valid until the next failing call on the same thread; do not free it.
 */
const char *pmsq_last_error(void);

/**
 * Verify a row-major `order x order` block of 64-bit entries.
 *
 * # Safety
 * `entries` must point to `order * order` readable values and `out` must be
 * a valid pointer.
 */
enum PmsqStatus pmsq_square_verify_i64(const int64_t *entries,
                                       uintptr_t order,
                                       struct PmsqSquare **out);

/**
 * Parse and verify a square from its JSON document form.
 *
 * # Safety
 * `json` must be a valid NUL-terminated string and `out` a valid pointer.
 */
enum PmsqStatus pmsq_square_from_json(const char *json, struct PmsqSquare **out);

/**
 * Serialize a square to its JSON document form. Free with `pmsq_string_free`.
 *
 * # Safety
 * `sq` must be a live handle from this library.
 */
char *pmsq_square_to_json(const struct PmsqSquare *sq);

/**
 * # Safety
 * `sq` must be a live handle from this library.
 */
uintptr_t pmsq_square_order(const struct PmsqSquare *sq);

/**
 * Magic constant, if it fits in an `i64`.
 *
 * # Safety
 * `sq` must be a live handle and `out` a valid pointer.
 */
enum PmsqStatus pmsq_square_constant_i64(const struct PmsqSquare *sq, int64_t *out);

/**
 * Entry at `(row, col)`, if it fits in an `i64`.
 *
 * # Safety
 * `sq` must be a live handle and `out` a valid pointer.
 */
enum PmsqStatus pmsq_square_entry_i64(const struct PmsqSquare *sq,
                                      uintptr_t row,
                                      uintptr_t col,
                                      int64_t *out);

/**
 * Entry-wise sum; orders must match.
 *
 * # Safety
 * `a` and `b` must be live handles and `out` a valid pointer.
 */
enum PmsqStatus pmsq_square_add(const struct PmsqSquare *a,
                                const struct PmsqSquare *b,
                                struct PmsqSquare **out);

/**
 * Block construction `[A B; B A]` of order `2n`.
 *
 * # Safety
 * `a` and `b` must be live handles and `out` a valid pointer.
 */
enum PmsqStatus pmsq_square_direct_sum(const struct PmsqSquare *a,
                                       const struct PmsqSquare *b,
                                       struct PmsqSquare **out);

/**
 * Kronecker product of order `n * m`.
 *
 * # Safety
 * `a` and `b` must be live handles and `out` a valid pointer.
 */
enum PmsqStatus pmsq_square_kronecker(const struct PmsqSquare *a,
                                      const struct PmsqSquare *b,
                                      struct PmsqSquare **out);

/**
 * Multiply every entry by `k`.
 *
 * # Safety
 * `sq` must be a live handle and `out` a valid pointer.
 */
enum PmsqStatus pmsq_square_scale(const struct PmsqSquare *sq, int64_t k, struct PmsqSquare **out);

/**
 * Add `k` to every entry.
 *
 * # Safety
 * `sq` must be a live handle and `out` a valid pointer.
 */
enum PmsqStatus pmsq_square_shift(const struct PmsqSquare *sq, int64_t k, struct PmsqSquare **out);

/**
 * Entry-wise negation.
 *
 * # Safety
 * `sq` must be a live handle and `out` a valid pointer.
 */
enum PmsqStatus pmsq_square_neg(const struct PmsqSquare *sq, struct PmsqSquare **out);

/**
 * Lexicographically least square in the dihedral orbit (rotations and
 * reflections) of `sq`.
 *
 * # Safety
 * `sq` must be a live handle and `out` a valid pointer.
 */
enum PmsqStatus pmsq_square_canonical_form(const struct PmsqSquare *sq, struct PmsqSquare **out);

/**
 * Release a handle. Null is a no-op.
 *
 * # Safety
 * `sq` must be a handle from this library that has not been freed.
 */
void pmsq_square_free(struct PmsqSquare *sq);

/**
 * Release a string returned by `pmsq_square_to_json`. Null is a no-op.
 *
 * # Safety
 * `s` must be a string from this library that has not been freed.
 */
void pmsq_string_free(char *s);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* PMSQ_H */
