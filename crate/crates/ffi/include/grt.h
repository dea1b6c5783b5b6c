#ifndef GRT_H
#define GRT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * How to build a triangle from parameters.
 */
typedef enum GrtRule {
  GRT_RULE_CLOSED_FORM = 0,
  GRT_RULE_ADDITION = 1,
  GRT_RULE_MULTIPLICATION = 2,
} GrtRule;

/**
 * Result codes. `GRT_STATUS_OK` is zero; everything else is an error.
 */
typedef enum GrtStatus {
  GRT_STATUS_OK = 0,
  GRT_STATUS_NULL_POINTER = 1,
  GRT_STATUS_INVALID_ARGUMENT = 2,
  /**
   * The multiplication rule hit a zero North or an inexact division.
   */
  GRT_STATUS_GENERATION_FAILED = 3,
  GRT_STATUS_PARSE_ERROR = 4,
  GRT_STATUS_OUT_OF_RANGE = 5,
  /**
   * The triangle is not a GRT.
   */
  GRT_STATUS_NOT_GRT = 6,
  /**
   * Fewer rows than the analysis needs.
   */
  GRT_STATUS_TOO_SMALL = 7,
  /**
   * A value does not fit the requested fixed-width type.
   */
  GRT_STATUS_OVERFLOW = 8,
  GRT_STATUS_INVALID_UTF8 = 9,
  /**
   * An internal panic was caught at the boundary.
   */
  GRT_STATUS_INTERNAL = 10,
} GrtStatus;

typedef enum GrtVerdict {
  GRT_VERDICT_GRT = 0,
  GRT_VERDICT_ADDITION_ONLY = 1,
  GRT_VERDICT_MULTIPLICATION_ONLY = 2,
  GRT_VERDICT_NEITHER = 3,
} GrtVerdict;

/**
 * Opaque triangle handle.
 */
typedef struct GrtTriangle GrtTriangle;

/**
 * The four parameters of `T(r, k) = c + k*d1 + r*d2 + r*k*d`.
 */
typedef struct GrtParamsI64 {
  int64_t c;
  int64_t d;
  int64_t d1;
  int64_t d2;
} GrtParamsI64;

/**
 * Summary of a classification. Constants are only meaningful when the
 * matching `has_` flag is set; `params` only when `verdict` is `Grt`.
 */
typedef struct GrtClassification {
  enum GrtVerdict verdict;
  bool has_addition_constant;
  int64_t addition_constant;
  bool has_multiplication_constant;
  int64_t multiplication_constant;
  struct GrtParamsI64 params;
} GrtClassification;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Build an `n_rows` triangle from parameters using `rule`.
 *
 * # Safety
 *
 * `params` must point to a valid `GrtParamsI64`; `out` must be writable.
 */
enum GrtStatus grt_triangle_generate(const struct GrtParamsI64 *params,
                                     size_t n_rows,
                                     enum GrtRule rule,
                                     struct GrtTriangle **out);

/**
 * Build a triangle of `len` rows from its two edges and a rule constant.
 * `major` runs down the left edge (`r = 0`), `minor` down the right edge
 * (`k = 0`); both start at the apex. `rule` must be `Addition` (the
 * constant is `d`) or `Multiplication` (the constant is `D`).
 *
 * # Safety
 *
 * `major` and `minor` must each point to `len` readable values; `out` must
 * be writable.
 */
enum GrtStatus grt_triangle_from_edges(const int64_t *major,
                                       const int64_t *minor,
                                       size_t len,
                                       int64_t constant,
                                       enum GrtRule rule,
                                       struct GrtTriangle **out);

/**
 * Parse a triangle from whitespace-separated rows or from JSON
 * (`{"rows": [[...], ...]}`).
 *
 * # Safety
 *
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum GrtStatus grt_triangle_parse(const char *text, struct GrtTriangle **out);

/**
 * Release a triangle. Null is ignored.
 *
 * # Safety
 *
 * `triangle` must come from this library and not have been freed.
 */
void grt_triangle_free(struct GrtTriangle *triangle);

/**
 * Number of rows, or 0 for a null handle.
 *
 * # Safety
 *
 * `triangle` must be null or a live handle.
 */
size_t grt_triangle_rows(const struct GrtTriangle *triangle);

/**
 * Entry `T(r, k)` as a 64-bit integer.
 *
 * # Safety
 *
 * `triangle` must be a live handle; `out` must be writable.
 */
enum GrtStatus grt_triangle_entry_i64(const struct GrtTriangle *triangle,
                                      size_t r,
                                      size_t k,
                                      int64_t *out);

/**
 * Entry `T(r, k)` as a decimal string. Free it with `grt_string_free`.
 *
 * # Safety
 *
 * `triangle` must be a live handle; `out` must be writable.
 */
enum GrtStatus grt_triangle_entry_string(const struct GrtTriangle *triangle,
                                         size_t r,
                                         size_t k,
                                         char **out);

/**
 * The triangle as text, one row per line.
 *
 * # Safety
 *
 * `triangle` must be a live handle; `out` must be writable.
 */
enum GrtStatus grt_triangle_to_text(const struct GrtTriangle *triangle, char **out);

/**
 * The triangle as JSON. Values outside the 64-bit range are strings.
 *
 * # Safety
 *
 * `triangle` must be a live handle; `out` must be writable.
 */
enum GrtStatus grt_triangle_to_json(const struct GrtTriangle *triangle, char **out);

/**
 * Release a string returned by this library. Null is ignored.
 *
 * # Safety
 *
 * `s` must come from this library and not have been freed.
 */
void grt_string_free(char *s);

/**
 * Recover the parameters of a GRT.
 *
 * # Safety
 *
 * `triangle` must be a live handle; `out` must be writable.
 */
enum GrtStatus grt_fit(const struct GrtTriangle *triangle, struct GrtParamsI64 *out);

/**
 * Classify a triangle against the closed form and both local rules.
 *
 * # Safety
 *
 * `triangle` must be a live handle; `out` must be writable.
 */
enum GrtStatus grt_classify(const struct GrtTriangle *triangle, struct GrtClassification *out);

/**
 * The full classification report as JSON, including diagonal reports and
 * conflicting diamonds.
 *
 * # Safety
 *
 * `triangle` must be a live handle; `out` must be writable.
 */
enum GrtStatus grt_classify_json(const struct GrtTriangle *triangle, char **out);

/**
 * The multiplication-rule constant `D = c*d - d1*d2`.
 *
 * # Safety
 *
 * `params` must point to a valid `GrtParamsI64`; `out` must be writable.
 */
enum GrtStatus grt_mult_constant(const struct GrtParamsI64 *params, int64_t *out);

/**
 * Message for the most recent failure on this thread, or null after a
 * success. Valid until the next call into the library on this thread.
 */
const char *grt_last_error_message(void);

/**
 * Library version as a static string.
 */
const char *grt_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GRT_H */
