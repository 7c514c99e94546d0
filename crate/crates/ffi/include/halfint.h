#ifndef HALFINT_H
#define HALFINT_H

/* Generated by cbindgen; do not edit. */

#include <stdbool.h>
#include <stdint.h>

/**
 * Result codes. Zero is success.
 */
typedef enum HalfintStatus {
  HALFINT_STATUS_OK = 0,
  HALFINT_STATUS_NULL_POINTER = 1,
  HALFINT_STATUS_INVALID_ARGUMENT = 2,
  HALFINT_STATUS_DIVISION_BY_ZERO = 3,
  HALFINT_STATUS_NOT_INVERTIBLE = 4,
  HALFINT_STATUS_BEYOND_PRECISION = 5,
  HALFINT_STATUS_FRACTIONAL_SUPPORT = 6,
  HALFINT_STATUS_INVALID_LEVEL = 7,
  HALFINT_STATUS_INVALID_WEIGHT = 8,
  HALFINT_STATUS_PARSE = 9,
  HALFINT_STATUS_PANIC = 10,
} HalfintStatus;

/**
 * Kinds of modular unit accepted by `halfint_theta_unit`.
 */
typedef enum HalfintUnitKind {
  /**
   * `a = m`, `b = t`.
   */
  HALFINT_UNIT_KIND_GENERIC_M = 0,
  /**
   * `a = l`; `b` ignored.
   */
  HALFINT_UNIT_KIND_SUBGROUP_ZETA = 1,
  /**
   * `a = l`, `b = j`.
   */
  HALFINT_UNIT_KIND_SUBGROUP_ZETA_Q = 2,
  /**
   * `a = l`, `b = t`.
   */
  HALFINT_UNIT_KIND_PRIME_LEVEL = 3,
} HalfintUnitKind;

/**
 * Opaque q-series handle.
 */
typedef struct HalfintSeries HalfintSeries;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the most recent failure on this thread; empty if none.
 * The pointer stays valid until the next failing call on this thread.
 */
const char *halfint_last_error(void);

/**
 * Static description of a status code.
 */
const char *halfint_status_str(enum HalfintStatus status);

/**
 * `Σ q^{n²}` known below `q^prec`.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage.
 */
enum HalfintStatus halfint_theta_series(int64_t prec, struct HalfintSeries **out);

/**
 * Expansion of a modular unit; see `HalfintUnitKind` for `a` and `b`.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage.
 */
enum HalfintStatus halfint_theta_unit(enum HalfintUnitKind kind,
                                      uint64_t a,
                                      int64_t b,
                                      int64_t prec,
                                      struct HalfintSeries **out);

/**
 * Parse a series from its JSON form.
 *
 * # Safety
 * `json` must be a nul-terminated string; `out` must be writable.
 */
enum HalfintStatus halfint_series_from_json(const char *json, struct HalfintSeries **out);

/**
 * JSON form of a series; release with `halfint_string_free`.
 *
 * # Safety
 * `s` must be a live handle; `out` must be writable.
 */
enum HalfintStatus halfint_series_to_json(const struct HalfintSeries *s, char **out);

/**
 * Human-readable form such as `1+2q+2q^4+O(q^5)`; release with `halfint_string_free`.
 *
 * # Safety
 * `s` must be a live handle; `out` must be writable.
 */
enum HalfintStatus halfint_series_to_string(const struct HalfintSeries *s, char **out);

/**
 * # Safety
 * Handles must be live; `out` must be writable.
 */
enum HalfintStatus halfint_series_add(const struct HalfintSeries *a,
                                      const struct HalfintSeries *b,
                                      struct HalfintSeries **out);

/**
 * # Safety
 * Handles must be live; `out` must be writable.
 */
enum HalfintStatus halfint_series_mul(const struct HalfintSeries *a,
                                      const struct HalfintSeries *b,
                                      struct HalfintSeries **out);

/**
 * Inverse known below `min(target_prec, P − 2v)` on the series' grid.
 *
 * # Safety
 * `a` must be live; `out` must be writable.
 */
enum HalfintStatus halfint_series_inv(const struct HalfintSeries *a,
                                      int64_t target_prec,
                                      struct HalfintSeries **out);

/**
 * Precision numerator `P` and grid `D`: coefficients below `q^{P/D}` are known.
 *
 * # Safety
 * `s` must be live; the out pointers must be writable.
 */
enum HalfintStatus halfint_series_precision(const struct HalfintSeries *s,
                                            int64_t *prec,
                                            uint64_t *denom);

/**
 * `T_{l²}` with trivial character at level `4N`, weight `k/2`.
 *
 * # Safety
 * `a` must be live; `out` must be writable.
 */
enum HalfintStatus halfint_hecke_t2(const struct HalfintSeries *a,
                                    uint64_t level,
                                    int64_t k,
                                    uint64_t l,
                                    struct HalfintSeries **out);

/**
 * `Σ a_n qⁿ ↦ Σ a_{p²n} qⁿ`.
 *
 * # Safety
 * `a` must be live; `out` must be writable.
 */
enum HalfintStatus halfint_hecke_up2(const struct HalfintSeries *a,
                                     uint64_t p,
                                     struct HalfintSeries **out);

/**
 * Writes the least failing level `≤ max_level`, or 0 when none fails.
 *
 * # Safety
 * `out` must be writable.
 */
enum HalfintStatus halfint_counterexample_scan(int64_t k, uint64_t max_level, uint64_t *out);

/**
 * # Safety
 * `out` must be writable.
 */
enum HalfintStatus halfint_base_change_holds(uint64_t four_n, int64_t k, bool *out);

/**
 * # Safety
 * `out` must be writable.
 */
enum HalfintStatus halfint_genus_gamma1(uint64_t m, int64_t *out);

/**
 * Release a series handle; null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void halfint_series_free(struct HalfintSeries *s);

/**
 * Release a string returned by this library; null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void halfint_string_free(char *s);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* HALFINT_H */
