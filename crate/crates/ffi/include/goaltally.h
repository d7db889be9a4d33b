#ifndef GOALTALLY_H
#define GOALTALLY_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. Values 0 to 4 match the command-line exit codes.
 */
typedef enum GtStatus {
  GT_STATUS_OK = 0,
  /**
   * Malformed input: bad JSON, bad UTF-8, out-of-range argument.
   */
  GT_STATUS_INVALID_INPUT = 1,
  /**
   * Input parsed but violates a model invariant.
   */
  GT_STATUS_VALIDATION = 2,
  /**
   * A fit or comparison did not verify, or no puzzle was found.
   */
  GT_STATUS_VERIFICATION = 3,
  GT_STATUS_RESOURCE_LIMIT = 4,
  GT_STATUS_NULL_POINTER = 5,
  /**
   * A Rust panic was caught at the boundary.
   */
  GT_STATUS_PANIC = 6,
} GtStatus;

typedef enum GtFitMode {
  GT_FIT_MODE_PLAIN = 0,
  GT_FIT_MODE_ECONOMICAL = 1,
} GtFitMode;

/**
 * Opaque fitted polynomial with exact rational coefficients.
 */
typedef struct GtPolynomial GtPolynomial;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or NULL. Free with
 * [`gt_string_free`].
 */
char *gt_last_error(void);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library, not yet freed.
 */
void gt_string_free(char *s);

/**
 * Number of `n x n` zero-diagonal matrices with all line sums `r`, as a
 * decimal string.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage.
 */
enum GtStatus gt_count_zero_diagonal(size_t n, int64_t r, char **out);

/**
 * Count for a problem given as JSON (`{"sr": [...], "sc": [...], "mask": [[...]]}`,
 * free cells written `"*"`) at margin parameter `r`.
 *
 * # Safety
 * `problem_json` must be a NUL-terminated string; `out` must be writable.
 */
enum GtStatus gt_count_problem_json(const char *problem_json, int64_t r, char **out);

/**
 * Fits the zero-diagonal counting polynomial for `n` and verifies it.
 *
 * # Safety
 * `out` must be writable; the handle is freed with [`gt_polynomial_free`].
 */
enum GtStatus gt_fit_sn(size_t n, enum GtFitMode mode, struct GtPolynomial **out);

/**
 * # Safety
 * `p` must be NULL or a handle from [`gt_fit_sn`], not yet freed.
 */
void gt_polynomial_free(struct GtPolynomial *p);

/**
 * Degree, or -1 for the zero polynomial or a NULL handle.
 *
 * # Safety
 * `p` must be NULL or a live handle.
 */
int64_t gt_polynomial_degree(const struct GtPolynomial *p);

/**
 * Exact value at integer `r`, written as `"num"` or `"num/den"`.
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum GtStatus gt_polynomial_eval(const struct GtPolynomial *p, int64_t r, char **out);

/**
 * Human-readable form such as `(2*r^5 + ... + 30)/30`.
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum GtStatus gt_polynomial_to_string(const struct GtPolynomial *p, char **out);

/**
 * Number of match-score scenarios for a scoreboard of `n` teams. `pts` may
 * be NULL to leave points unconstrained.
 *
 * # Safety
 * `gf` and `ga` must point to `n` values, `pts` to `n` values or be NULL;
 * `out` must be writable.
 */
enum GtStatus gt_find_scenarios(size_t n,
                                const uint64_t *gf,
                                const uint64_t *ga,
                                const uint64_t *pts,
                                uint64_t win,
                                uint64_t draw,
                                uint64_t loss,
                                char **out);

/**
 * Generates a puzzle (3/1/0 points) and writes it as JSON.
 *
 * # Safety
 * `out` must be writable.
 */
enum GtStatus gt_make_puzzle_json(size_t n,
                                  uint64_t max_goal,
                                  uint64_t seed,
                                  bool require_unique,
                                  char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GOALTALLY_H */
