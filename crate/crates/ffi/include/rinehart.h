#ifndef RINEHART_H
#define RINEHART_H

/* Generated by cbindgen. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. Mathematical verdicts are never encoded here: an
 * infeasible system is `RH_STATUS_OK` with an infeasible report.
 */
typedef enum RhStatus {
  RH_STATUS_OK = 0,
  RH_STATUS_NULL_POINTER = 1,
  RH_STATUS_INVALID_UTF8 = 2,
  RH_STATUS_INPUT_ERROR = 3,
  RH_STATUS_INTERNAL_ERROR = 4,
  RH_STATUS_PANIC = 5,
} RhStatus;

/**
 * A parsed problem file.
 */
typedef struct RhProblem RhProblem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failing call on this thread; empty after a success.
 * The pointer stays valid until the next call into this library.
 */
const char *rh_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *rh_version(void);

/**
 * Parses problem-file text.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a writable pointer.
 */
enum RhStatus rh_problem_parse(const char *text, struct RhProblem **out);

/**
 * Loads a built-in problem by name (`square-zero`, `euler-dual`).
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` a writable pointer.
 */
enum RhStatus rh_problem_preset(const char *name, struct RhProblem **out);

/**
 * Releases a problem handle. Null is ignored.
 *
 * # Safety
 * `p` must come from this library and not be used afterwards.
 */
void rh_problem_free(struct RhProblem *p);

/**
 * Writes the problem back out as TOML.
 *
 * # Safety
 * `p` must be a live handle and `out` a writable pointer.
 */
enum RhStatus rh_problem_to_toml(const struct RhProblem *p, char **out);

/**
 * Axiom checks.
 *
 * # Safety
 * `p` must be a live handle and `out` a writable pointer.
 */
enum RhStatus rh_check(const struct RhProblem *p, char **out);

/**
 * Truncated enveloping algebra up to `degree`.
 *
 * # Safety
 * `p` must be a live handle and `out` a writable pointer.
 */
enum RhStatus rh_envelope(const struct RhProblem *p, size_t degree, bool list_basis, char **out);

/**
 * Right-module extension search; a found extension is checked up to `degree`.
 *
 * # Safety
 * `p` must be a live handle and `out` a writable pointer.
 */
enum RhStatus rh_partial(const struct RhProblem *p, size_t degree, char **out);

/**
 * Left divisibility of `target` by `left` in the degree-`degree` slice.
 *
 * # Safety
 * `p` must be a live handle, `left` and `target` NUL-terminated strings,
 * and `out` a writable pointer.
 */
enum RhStatus rh_divide(const struct RhProblem *p,
                        const char *left,
                        const char *target,
                        size_t degree,
                        char **out);

/**
 * End-to-end obstruction run over GF(`prime`), or over the rationals when
 * `prime` is 0.
 *
 * # Safety
 * `out` must be a writable pointer.
 */
enum RhStatus rh_theorem1(uint64_t prime, size_t degree, char **out);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void rh_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RINEHART_H */
