#ifndef OVALG_H
#define OVALG_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Structure of a generated system.
 */
typedef enum OvalgKind {
  OVALG_KIND_OV = 0,
  OVALG_KIND_MIXED = 1,
  OVALG_KIND_FULL = 2,
} OvalgKind;

/**
 * Outcome of a call.
 */
typedef enum OvalgStatus {
  OVALG_STATUS_OK = 0,
  OVALG_STATUS_NULL_POINTER = 1,
  OVALG_STATUS_INVALID_UTF8 = 2,
  OVALG_STATUS_PARSE = 3,
  OVALG_STATUS_BAD_PARAMETERS = 4,
  OVALG_STATUS_BUDGET_EXCEEDED = 5,
  OVALG_STATUS_NOT_FOUND = 6,
  OVALG_STATUS_PRECONDITION = 7,
  OVALG_STATUS_IO = 8,
  OVALG_STATUS_OVERFLOW = 9,
  OVALG_STATUS_INTERNAL = 10,
} OvalgStatus;

/**
 * A truncated power series with integer coefficients.
 */
typedef struct OvalgSeries OvalgSeries;

/**
 * A polynomial system.
 */
typedef struct OvalgSystem OvalgSystem;

/**
 * Parameters of [`ovalg_system_generate`]. `m` is ignored for mixed
 * systems, `v`, `e` and `u` where they do not apply. `p = 0` selects the
 * default char-0 proxy prime.
 */
typedef struct OvalgGenParams {
  enum OvalgKind kind;
  uintptr_t n;
  uintptr_t v;
  uintptr_t m;
  uintptr_t e;
  uintptr_t u;
  uint32_t p;
  bool char0_proxy;
  bool field_equations;
  bool homogeneous;
  uint64_t seed;
} OvalgGenParams;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread; empty after a success.
 * The pointer stays valid until the next call on the same thread.
 */
const char *ovalg_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *ovalg_version(void);

/**
 * Release a string returned by this library.
 *
 * # Safety
 * `s` must be NULL or a string returned by this library and not yet freed.
 */
void ovalg_string_free(char *s);

/**
 * Parse a system from the text format or its JSON mirror.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum OvalgStatus ovalg_system_parse(const char *text, struct OvalgSystem **out);

/**
 * Read a system file.
 *
 * # Safety
 * `path` must be a NUL-terminated string and `out` a valid pointer.
 */
enum OvalgStatus ovalg_system_read_file(const char *path, struct OvalgSystem **out);

/**
 * Generate a seeded random system.
 *
 * # Safety
 * `params` and `out` must be valid pointers.
 */
enum OvalgStatus ovalg_system_generate(const struct OvalgGenParams *params,
                                       struct OvalgSystem **out);

/**
 * Release a system.
 *
 * # Safety
 * `s` must be NULL or a handle returned by this library and not yet freed.
 */
void ovalg_system_free(struct OvalgSystem *s);

/**
 * Number of variables, or 0 for NULL.
 *
 * # Safety
 * `s` must be NULL or a live handle.
 */
uintptr_t ovalg_system_nvars(const struct OvalgSystem *s);

/**
 * Number of polynomials, or 0 for NULL.
 *
 * # Safety
 * `s` must be NULL or a live handle.
 */
uintptr_t ovalg_system_npolys(const struct OvalgSystem *s);

/**
 * Serialize in the text format; free the result with [`ovalg_string_free`].
 *
 * # Safety
 * `s` must be a live handle and `out` a valid pointer.
 */
enum OvalgStatus ovalg_system_to_text(const struct OvalgSystem *s, char **out);

/**
 * Empirical Hilbert series through degree `dmax`.
 *
 * # Safety
 * `s` must be a live handle and `out` a valid pointer.
 */
enum OvalgStatus ovalg_hilbert_series(const struct OvalgSystem *s,
                                      uintptr_t dmax,
                                      struct OvalgSeries **out);

/**
 * Expand `num / den` through degree `d`; coefficients are ascending and the
 * constant term of `den` must be ±1.
 *
 * # Safety
 * `num` and `den` must point to `num_len` and `den_len` readable values;
 * `out` must be a valid pointer.
 */
enum OvalgStatus ovalg_series_expand(const int64_t *num,
                                     uintptr_t num_len,
                                     const int64_t *den,
                                     uintptr_t den_len,
                                     uintptr_t d,
                                     struct OvalgSeries **out);

/**
 * Number of coefficients (`D + 1`), or 0 for NULL.
 *
 * # Safety
 * `s` must be NULL or a live handle.
 */
uintptr_t ovalg_series_len(const struct OvalgSeries *s);

/**
 * Coefficient of `t^index`; `Overflow` when it does not fit in 64 bits.
 *
 * # Safety
 * `s` must be a live handle and `out` a valid pointer.
 */
enum OvalgStatus ovalg_series_coeff(const struct OvalgSeries *s, uintptr_t index, int64_t *out);

/**
 * Release a series.
 *
 * # Safety
 * `s` must be NULL or a handle returned by this library and not yet freed.
 */
void ovalg_series_free(struct OvalgSeries *s);

/**
 * Degree of regularity of a homogeneous OV or mixed system, from series
 * computed through `dmax`.
 *
 * # Safety
 * `s` must be a live handle and `out` a valid pointer.
 */
enum OvalgStatus ovalg_dreg(const struct OvalgSystem *s, uintptr_t dmax, uintptr_t *out);

/**
 * Least degree `<= d_max` at which the reduced Macaulay matrix is a Gröbner basis.
 *
 * # Safety
 * `s` must be a live handle and `out` a valid pointer.
 */
enum OvalgStatus ovalg_solving_degree(const struct OvalgSystem *s, uintptr_t d_max, uintptr_t *out);

/**
 * Least degree `<= d_max` with non-trivial syzygies.
 *
 * # Safety
 * `s` must be a live handle and `out` a valid pointer.
 */
enum OvalgStatus ovalg_first_fall_degree(const struct OvalgSystem *s,
                                         uintptr_t d_max,
                                         uintptr_t *out);

/**
 * Full invariant report as JSON; free the result with [`ovalg_string_free`].
 *
 * # Safety
 * `s` must be a live handle and `out` a valid pointer.
 */
enum OvalgStatus ovalg_analyze_json(const struct OvalgSystem *s,
                                    uintptr_t dmax,
                                    uintptr_t d_max,
                                    char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* OVALG_H */
