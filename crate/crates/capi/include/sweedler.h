#ifndef SWEEDLER_H
#define SWEEDLER_H

/* Generated from the sweedler-capi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result class of every call. The numeric values are a stable contract.
typedef enum SweedlerStatus {
  SweedlerStatus_Ok = 0,
  SweedlerStatus_CheckFailed = 1,
  SweedlerStatus_InvalidInput = 2,
  SweedlerStatus_Internal = 3,
} SweedlerStatus;

// Opaque handle to a validated algebra.
typedef struct SweedlerAlgebra SweedlerAlgebra;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Pointer to the last failure message on this thread, or null. The pointer
// stays valid until the next failing call on the same thread.
const char *sweedler_last_error(void);

// Builds an algebra from the JSON schema used by the CLI. On success writes
// a handle the caller must release with [`sweedler_algebra_free`]. The
// algebra axioms are verified; failing them is `CheckFailed`.
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be a valid pointer.
enum SweedlerStatus sweedler_algebra_from_json(const char *json, struct SweedlerAlgebra **out);

// Builds a built-in algebra, e.g. field "Q" and name "m2" or "group:c3".
//
// # Safety
// `field` and `name` must be NUL-terminated strings; `out` must be valid.
enum SweedlerStatus sweedler_algebra_builtin(const char *field,
                                             const char *name,
                                             struct SweedlerAlgebra **out);

// Releases a handle returned by the constructors. Null is ignored.
//
// # Safety
// `handle` must be null or a pointer returned by a constructor, not yet freed.
void sweedler_algebra_free(struct SweedlerAlgebra *handle);

// Releases a string returned by any reporting call. Null is ignored.
//
// # Safety
// `s` must be null or a pointer returned by this library, not yet freed.
void sweedler_string_free(char *s);

// Canonical JSON form of the algebra behind the handle.
//
// # Safety
// `handle` must be a live handle; `out` must be a valid pointer.
enum SweedlerStatus sweedler_algebra_to_json(const struct SweedlerAlgebra *handle, char **out);

// Runs the algebra axiom suite; the report is written as JSON.
//
// # Safety
// `handle` must be a live handle; `report` must be a valid pointer.
enum SweedlerStatus sweedler_algebra_check(const struct SweedlerAlgebra *handle, char **report);

// Looks for a separability element. The report JSON records whether one
// exists, its terms, and the verification of its defining identities.
//
// # Safety
// `handle` must be a live handle; `report` must be a valid pointer.
enum SweedlerStatus sweedler_algebra_separability(const struct SweedlerAlgebra *handle,
                                                  char **report);

// Verifies the braiding axioms over the default object family. A null
// `twist` verifies the canonical braiding; otherwise `twist` holds the
// coordinates of the twisting element, e.g. "(1,0)". `CheckFailed` means
// the axioms fail; the JSON report names the failing check.
//
// # Safety
// `handle` must be a live handle; `twist` null or NUL-terminated; `report`
// must be a valid pointer.
enum SweedlerStatus sweedler_braiding_verify(const struct SweedlerAlgebra *handle,
                                             const char *twist,
                                             char **report);

// Solves for every braiding with the default splitting map, optionally
// cross-checking against the brute-force search. The report carries the
// stage dimensions, survivors, and the agreement flag. `CheckFailed` means
// the oracle disagreed with the pipeline.
//
// # Safety
// `handle` must be a live handle; `report` must be a valid pointer.
enum SweedlerStatus sweedler_braiding_solve(const struct SweedlerAlgebra *handle,
                                            bool with_oracle,
                                            char **report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SWEEDLER_H */
