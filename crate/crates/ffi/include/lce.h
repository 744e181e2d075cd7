/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#ifndef LCE_H
#define LCE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes. The non-zero values match the exit codes of the `lce` tool
// where they overlap.
typedef enum LceStatus {
  LCE_STATUS_OK = 0,
  // Internal failure, cache I/O error, or a value too large for the output type.
  LCE_STATUS_FAILURE = 1,
  LCE_STATUS_PARSE = 2,
  LCE_STATUS_INVALID = 3,
  // The two computation routes disagree. Output is still produced.
  LCE_STATUS_MISMATCH = 4,
  LCE_STATUS_NULL_ARGUMENT = 5,
} LceStatus;

// Shared Kazhdan-Lusztig cache. Safe to use from several threads at once.
typedef struct LceEngine LceEngine;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Creates an engine with an empty cache. Release it with [`lce_engine_free`].
struct LceEngine *lce_engine_new(void);

// # Safety
// `engine` must come from [`lce_engine_new`] and not be used afterwards. Null is ignored.
void lce_engine_free(struct LceEngine *engine);

// Number of polynomials currently cached, or 0 for a null engine.
//
// # Safety
// `engine` must be null or a live engine.
size_t lce_engine_cached_pairs(const struct LceEngine *engine);

// Merges a cache file into the engine. A missing file loads nothing.
// `loaded` may be null.
//
// # Safety
// `engine` must be a live engine, `path` a NUL-terminated string, `loaded` null or writable.
enum LceStatus lce_engine_load_cache(const struct LceEngine *engine,
                                     const char *path,
                                     size_t *loaded);

// Writes every cached polynomial to `path`.
//
// # Safety
// `engine` must be a live engine and `path` a NUL-terminated string.
enum LceStatus lce_engine_save_cache(const struct LceEngine *engine, const char *path);

// Computes the expansion of the multisegment written as `"[0,1]+[1,2]"` and
// stores it as a JSON object in `*out`. With `verify`, both routes are run
// and [`LceStatus::Mismatch`] is returned if they differ.
//
// # Safety
// `engine` must be a live engine, `multisegment` a NUL-terminated string and `out` writable.
enum LceStatus lce_expand_json(const struct LceEngine *engine,
                               const char *multisegment,
                               bool verify,
                               char **out);

// Stores `P_{x,w}` as a JSON object in `*out`. Permutations are in one-line
// notation, e.g. `"1234"` or `"[1,2,3,4]"`.
//
// # Safety
// `engine` must be a live engine, `x` and `w` NUL-terminated strings and `out` writable.
enum LceStatus lce_kl_json(const struct LceEngine *engine,
                           const char *x,
                           const char *w,
                           char **out);

// Stores `P_{x,w}(1)` in `*value`.
//
// # Safety
// `engine` must be a live engine, `x` and `w` NUL-terminated strings and `value` writable.
enum LceStatus lce_kl_at_one(const struct LceEngine *engine,
                             const char *x,
                             const char *w,
                             uint64_t *value);

// Stores in `*count` the number of 0-1 matrices with row sums `alpha` and
// column sums `beta`. Empty arrays may be passed as null with length 0.
//
// # Safety
// `alpha` and `beta` must point to `alpha_len` and `beta_len` readable values; `count` must be writable.
enum LceStatus lce_count_01(const size_t *alpha,
                            size_t alpha_len,
                            const size_t *beta,
                            size_t beta_len,
                            uint64_t *count);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not be used afterwards.
void lce_string_free(char *s);

// Message of the last failure on this thread, or null. The pointer stays
// valid until the next failing call on the same thread.
const char *lce_last_error(void);

// Library version as a static string.
const char *lce_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LCE_H */
