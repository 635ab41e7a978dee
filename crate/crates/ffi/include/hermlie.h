#ifndef HERMLIE_H
#define HERMLIE_H

#pragma once

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Every check passed.
 */
#define HERMLIE_OK 0

/**
 * At least one identity failed.
 */
#define HERMLIE_IDENTITY_FAILURE 1

/**
 * The input was rejected.
 */
#define HERMLIE_INVALID_INPUT 2

/**
 * A spectral-gap warning left the result inconclusive.
 */
#define HERMLIE_INCONCLUSIVE 3

/**
 * A required pointer argument was null.
 */
#define HERMLIE_NULL_POINTER -1

/**
 * The caller's buffer is too short; the required length was written.
 */
#define HERMLIE_BUFFER_TOO_SMALL -2

/**
 * A string argument was not valid UTF-8.
 */
#define HERMLIE_INVALID_UTF8 -3

/**
 * Internal panic caught at the boundary.
 */
#define HERMLIE_PANIC -4

/**
 * A resolved Hermitian Lie algebra with its Samelson frame.
 */
typedef struct HermlieGroup HermlieGroup;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Resolves a built-in group such as `"su2xu1"`.
 *
 * # Safety
 * `id` must be a valid C string; `out` must be writable.
 */
int32_t hermlie_group_from_preset(const char *id, struct HermlieGroup **out);

/**
 * Resolves a group-spec JSON document.
 *
 * # Safety
 * `json` must be a valid C string; `out` must be writable.
 */
int32_t hermlie_group_from_json(const char *json, struct HermlieGroup **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `group` must come from a constructor above and not be used afterwards.
 */
void hermlie_group_free(struct HermlieGroup *group);

/**
 * Real and complex dimension.
 *
 * # Safety
 * `group` must be a live handle; the output pointers must be writable.
 */
int32_t hermlie_group_dimension(const struct HermlieGroup *group,
                                size_t *real_dim,
                                size_t *complex_dim);

/**
 * Writes `h^{0,0}, …, h^{0,n}` into `buf`. `*written` receives `n + 1`
 * even when `len` is too small, in which case nothing else is written and
 * `HERMLIE_BUFFER_TOO_SMALL` is returned. Returns `HERMLIE_IDENTITY_FAILURE`
 * if the numbers disagree with `C(r, p)` and `HERMLIE_INCONCLUSIVE` on a
 * spectral-gap warning; the numbers are written in both cases.
 *
 * # Safety
 * `group` must be a live handle, `buf` valid for `len` elements, `written` writable.
 */
int32_t hermlie_hodge_numbers(const struct HermlieGroup *group,
                              size_t *buf,
                              size_t len,
                              size_t *written);

/**
 * Runs verification suites (`"all"` or a comma-separated list) and returns
 * the JSON report through `out_json`. The return value is the report's exit
 * code.
 *
 * # Safety
 * `group` must be a live handle, `suites` a valid C string, `out_json` writable.
 */
int32_t hermlie_verify_json(const struct HermlieGroup *group,
                            const char *suites,
                            uint64_t seed,
                            double tol,
                            char **out_json);

/**
 * Validates a group-spec JSON document (algebra axioms and Samelson frame)
 * without creating a handle. The JSON report is returned through `out_json`
 * whenever the document parses.
 *
 * # Safety
 * `json` must be a valid C string; `out_json` must be writable.
 */
int32_t hermlie_validate_json(const char *json, char **out_json);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void hermlie_string_free(char *s);

/**
 * Message for the last failing call on this thread, or null. The pointer is
 * valid until the next call into the library on this thread.
 */
const char *hermlie_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HERMLIE_H */
