#ifndef FIXDISC_H
#define FIXDISC_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum FdContinuity {
  FD_CONTINUITY_CONTINUOUS = 0,
  FD_CONTINUITY_DISCONTINUOUS_LIMIT = 1,
  FD_CONTINUITY_DISCONTINUOUS_NO_LIMIT = 2,
} FdContinuity;

typedef enum FdKind {
  FD_KIND_M1 = 0,
  FD_KIND_M2 = 1,
  FD_KIND_PANT = 2,
  FD_KIND_BP_M = 3,
  FD_KIND_BP_N = 4,
  FD_KIND_RHOADES = 5,
  FD_KIND_DIST = 6,
} FdKind;

typedef enum FdStatus {
  FD_STATUS_OK = 0,
  FD_STATUS_NULL_POINTER = 1,
  FD_STATUS_INVALID_UTF8 = 2,
  FD_STATUS_PARSE = 3,
  FD_STATUS_DOMAIN = 4,
  FD_STATUS_INVALID_FUNCTION = 5,
  FD_STATUS_SPEC = 6,
  FD_STATUS_PARAM = 7,
  FD_STATUS_NOT_FIXED_POINT = 8,
  FD_STATUS_NOT_FIXED_CIRCLE = 9,
  FD_STATUS_IO = 10,
  FD_STATUS_BUFFER_TOO_SMALL = 11,
  FD_STATUS_PANIC = 12,
} FdStatus;

/**
 * Opaque self-map handle.
 */
typedef struct FdMap FdMap;

typedef struct FdOrbitSummary {
  bool converged;
  /**
   * Last iterate; the limit when `converged`.
   */
  double last;
  size_t iterations;
  /**
   * Last step `d(x_{n-1}, x_n)`.
   */
  double last_step;
} FdOrbitSummary;

/**
 * A component of the fixed-point set. Isolated points have `lo == hi`.
 */
typedef struct FdFixedSet {
  double lo;
  double hi;
  bool lo_inc;
  bool hi_inc;
} FdFixedSet;

typedef struct FdVerdict {
  enum FdContinuity status;
  bool has_left;
  double left;
  bool has_right;
  double right;
} FdVerdict;

/**
 * Mexican-hat parameters. With `discontinuous` false both tails are the
 * constant `m`; otherwise the left tail is `u` and the right tail `v`.
 */
typedef struct FdMexicanHat {
  double p;
  double r;
  double q;
  double l1;
  double c1;
  double l2;
  double c2;
  bool discontinuous;
  double m;
  double u;
  double v;
} FdMexicanHat;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. The pointer is
 * valid until the next failing call on the same thread.
 */
const char *fd_last_error_message(void);

/**
 * Parses a map definition from a NUL-terminated JSON string.
 *
 * # Safety
 * `json` must be null or a valid C string; `out` must be null or writable.
 */
enum FdStatus fd_map_from_json(const char *json, struct FdMap **out);

/**
 * Reads a map definition file.
 *
 * # Safety
 * `path` must be null or a valid C string; `out` must be null or writable.
 */
enum FdStatus fd_map_from_file(const char *path, struct FdMap **out);

/**
 * Releases a map handle. Null is ignored.
 *
 * # Safety
 * `map` must be null or a handle from this library not yet freed.
 */
void fd_map_free(struct FdMap *map);

/**
 * Serializes a map in the canonical file format. Free with `fd_string_free`.
 *
 * # Safety
 * `map` must be a live handle or null; `out` must be null or writable.
 */
enum FdStatus fd_map_to_json(const struct FdMap *map, char **out);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a string from this library not yet freed.
 */
void fd_string_free(char *s);

/**
 * Evaluates `T(x)`.
 *
 * # Safety
 * `map` must be a live handle or null; `out` must be null or writable.
 */
enum FdStatus fd_map_eval(const struct FdMap *map, double x, double *out);

/**
 * Builds `T^m` as a new handle (`m >= 1`).
 *
 * # Safety
 * `map` must be a live handle or null; `out` must be null or writable.
 */
enum FdStatus fd_map_power(const struct FdMap *map, uint32_t m, struct FdMap **out);

/**
 * Contraction number `M(x, y)` under the usual metric. `alpha` is read only
 * for `FD_KIND_BP_N`; `power` applies to m1 and m2 and must be 1 otherwise.
 *
 * # Safety
 * `map` must be a live handle or null; `out` must be null or writable.
 */
enum FdStatus fd_contraction_number(const struct FdMap *map,
                                    enum FdKind kind,
                                    uint32_t power,
                                    double alpha,
                                    double x,
                                    double y,
                                    double *out);

/**
 * Picard iteration from `x0` under the usual metric.
 *
 * # Safety
 * `map` must be a live handle or null; `out` must be null or writable.
 */
enum FdStatus fd_iterate(const struct FdMap *map,
                         double x0,
                         size_t max_iters,
                         double fix_tol,
                         struct FdOrbitSummary *out);

/**
 * Writes the fixed-point components into `buf` (capacity `cap`) and their
 * number into `count`. Returns `FD_STATUS_BUFFER_TOO_SMALL` with `count`
 * set when `cap` is insufficient; `buf` may be null when `cap` is 0.
 *
 * # Safety
 * `buf` must be valid for `cap` writes; `map` a live handle or null.
 */
enum FdStatus fd_fixed_points(const struct FdMap *map,
                              struct FdFixedSet *buf,
                              size_t cap,
                              size_t *count);

/**
 * Classifies continuity of `T` at the fixed point `y0` (m1 or m2 only).
 *
 * # Safety
 * `map` must be a live handle or null; `out` must be null or writable.
 */
enum FdStatus fd_classify(const struct FdMap *map,
                          enum FdKind kind,
                          uint32_t power,
                          double y0,
                          struct FdVerdict *out);

/**
 * Builds a Mexican-hat activation as a map on the real line.
 *
 * # Safety
 * `params` must be null or readable; `out` must be null or writable.
 */
enum FdStatus fd_activation_build(const struct FdMexicanHat *params, struct FdMap **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FIXDISC_H */
