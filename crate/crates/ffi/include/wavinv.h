#ifndef WAVINV_H
#define WAVINV_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum WavinvStatus {
  WAVINV_STATUS_OK = 0,
  /**
   * The check ran and failed; any report was still written.
   */
  WAVINV_STATUS_NOT_VERIFIED = 1,
  WAVINV_STATUS_DOMAIN = 2,
  WAVINV_STATUS_PARSE = 3,
  WAVINV_STATUS_NULL_POINTER = 4,
  WAVINV_STATUS_SUPPORT_TOUCHES_ORIGIN = 5,
  WAVINV_STATUS_UNSUPPORTED_PHASE = 6,
  WAVINV_STATUS_INVALID_INPUT = 7,
  WAVINV_STATUS_INTERNAL = 8,
} WavinvStatus;

/**
 * Opaque handle to an exact step function on the frequency side.
 */
typedef struct WavinvFunction WavinvFunction;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds a named family (`gamma`, `psi`, `w`, `shannon`). `n` is ignored
 * for `shannon`.
 *
 * # Safety
 * `family` must be a NUL-terminated string and `out` a valid pointer.
 */
enum WavinvStatus wavinv_construct(const char *family, uint32_t n, struct WavinvFunction **out);

/**
 * Seeded random wavelet supported in `S_n` with `cells` profile cells.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum WavinvStatus wavinv_construct_random(uint32_t n,
                                          size_t cells,
                                          uint64_t seed,
                                          struct WavinvFunction **out);

/**
 * Parses the StepFunction JSON document.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum WavinvStatus wavinv_from_json(const char *json, struct WavinvFunction **out);

/**
 * Canonical JSON for the function.
 *
 * # Safety
 * `f` must be a live handle and `out` a valid pointer.
 */
enum WavinvStatus wavinv_to_json(const struct WavinvFunction *f, char **out);

/**
 * Exact wavelet verification. Writes the overall verdict to `overall` and,
 * when `report` is non-null, the report JSON. Returns `NotVerified` when
 * the function is not a wavelet.
 *
 * # Safety
 * `f` must be a live handle; `overall` and `report` may be null.
 */
enum WavinvStatus wavinv_verify(const struct WavinvFunction *f, bool *overall, char **report);

/**
 * Class label JSON of a verified wavelet.
 *
 * # Safety
 * `f` must be a live handle and `out` a valid pointer.
 */
enum WavinvStatus wavinv_classify(const struct WavinvFunction *f, char **out);

/**
 * Hit table JSON.
 *
 * # Safety
 * `f` must be a live handle and `out` a valid pointer.
 */
enum WavinvStatus wavinv_hit_table(const struct WavinvFunction *f, char **out);

/**
 * Support-in-`S_n` characterization. Same reporting contract as
 * [`wavinv_verify`].
 *
 * # Safety
 * `f` must be a live handle; `all_hold` and `report` may be null.
 */
enum WavinvStatus wavinv_sncheck(const struct WavinvFunction *f,
                                 uint32_t n,
                                 bool *all_hold,
                                 char **report);

/**
 * Message for the last failing call on this thread, or null. The pointer
 * stays valid until the next call on the same thread; do not free it.
 */
const char *wavinv_last_error(void);

/**
 * # Safety
 * `f` must be null or a handle from this library not yet freed.
 */
void wavinv_free(struct WavinvFunction *f);

/**
 * # Safety
 * `s` must be null or a string returned by this library not yet freed.
 */
void wavinv_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WAVINV_H */
