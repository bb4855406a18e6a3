#ifndef FUZZY_DEPTH_H
#define FUZZY_DEPTH_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Depth functions.
 */
typedef enum FdDepthMethod {
  FD_DEPTH_METHOD_L1 = 0,
  FD_DEPTH_METHOD_TUKEY = 1,
  FD_DEPTH_METHOD_PROJECTION = 2,
  FD_DEPTH_METHOD_MODIFIED_SIMPLICIAL = 3,
  FD_DEPTH_METHOD_FUZZY_SIMPLICIAL = 4,
} FdDepthMethod;

/**
 * Result codes.
 */
typedef enum FdStatus {
  FD_STATUS_OK = 0,
  FD_STATUS_NULL_POINTER = 1,
  FD_STATUS_INVALID_PARAMETER = 2,
  FD_STATUS_NOT_NESTED = 3,
  FD_STATUS_EMPTY_CUT = 4,
  FD_STATUS_NOT_COMPACT = 5,
  FD_STATUS_GRID_MISMATCH = 6,
  FD_STATUS_DOMAIN = 7,
  FD_STATUS_DEGENERATE = 8,
  FD_STATUS_UNSUPPORTED = 9,
  FD_STATUS_BUFFER_TOO_SMALL = 10,
  FD_STATUS_PANIC = 11,
} FdStatus;

/**
 * A weighted sample or an analytic CDF.
 */
typedef struct FdBackend FdBackend;

/**
 * A validated fuzzy number.
 */
typedef struct FdFuzzyNumber FdFuzzyNumber;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL. The pointer is
 * valid until the next call into this library on the same thread.
 */
const char *fd_last_error_message(void);

/**
 * Triangular number `T(a, b, c)` on `levels` uniform levels.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle.
 */
enum FdStatus fd_number_triangular(double a,
                                   double b,
                                   double c,
                                   size_t levels,
                                   struct FdFuzzyNumber **out);

/**
 * Trapezoidal number on `levels` uniform levels.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle.
 */
enum FdStatus fd_number_trapezoidal(double a,
                                    double b,
                                    double c,
                                    double d,
                                    size_t levels,
                                    struct FdFuzzyNumber **out);

/**
 * Number from endpoint arrays of length `len`. `alphas` may be NULL for
 * uniform levels.
 *
 * # Safety
 * Non-null array pointers must reference `len` readable doubles; `out` must
 * be writable.
 */
enum FdStatus fd_number_from_arrays(const double *alphas,
                                    const double *lower,
                                    const double *upper,
                                    size_t len,
                                    struct FdFuzzyNumber **out);

/**
 * Number of levels of a fuzzy number (0 for NULL).
 *
 * # Safety
 * `number` must be NULL or a live handle.
 */
size_t fd_number_len(const struct FdFuzzyNumber *number);

/**
 * Copies levels and endpoints into caller buffers of capacity `cap`. Any
 * of the three buffers may be NULL.
 *
 * # Safety
 * `number` must be a live handle; non-null buffers must hold `cap` doubles.
 */
enum FdStatus fd_number_copy(const struct FdFuzzyNumber *number,
                             double *alphas,
                             double *lower,
                             double *upper,
                             size_t cap);

/**
 * # Safety
 * `number` must be NULL or a handle not yet freed.
 */
void fd_number_free(struct FdFuzzyNumber *number);

/**
 * `ρ_r(a, b)`.
 *
 * # Safety
 * `a`, `b` must be live handles and `out` writable.
 */
enum FdStatus fd_rho(const struct FdFuzzyNumber *a,
                     const struct FdFuzzyNumber *b,
                     double r,
                     double *out);

/**
 * Sample of `len` numbers (copied). `weights` may be NULL for uniform
 * weights.
 *
 * # Safety
 * `items` must reference `len` live handles; `weights`, when non-null,
 * `len` doubles; `out` must be writable.
 */
enum FdStatus fd_backend_sample(const struct FdFuzzyNumber *const *items,
                                const double *weights,
                                size_t len,
                                struct FdBackend **out);

/**
 * Piecewise-linear CDF of a crisp variable, from `len` breakpoints with
 * left and right limits.
 *
 * # Safety
 * The three arrays must reference `len` doubles; `out` must be writable.
 */
enum FdStatus fd_backend_cdf(const double *x,
                             const double *f_left,
                             const double *f_right,
                             size_t len,
                             struct FdBackend **out);

/**
 * # Safety
 * `backend` must be NULL or a handle not yet freed.
 */
void fd_backend_free(struct FdBackend *backend);

/**
 * Depth of `number`; `method` is an `FdDepthMethod` value. `r` is the
 * metric order for `FD_DEPTH_METHOD_L1`.
 * `out_u` and `out_alpha` receive the witness when non-null; they are set
 * to 0 and NaN when the method has none.
 *
 * # Safety
 * Handles must be live; non-null output pointers must be writable.
 */
enum FdStatus fd_depth(const struct FdFuzzyNumber *number,
                       const struct FdBackend *backend,
                       int32_t method,
                       double r,
                       double *out_value,
                       int32_t *out_u,
                       double *out_alpha);

/**
 * Sinova (`grzegorzewski == 0`) or Grzegorzewski median. `levels` is used
 * only for a CDF backend.
 *
 * # Safety
 * `backend` must be live; `out` writable.
 */
enum FdStatus fd_median(const struct FdBackend *backend,
                        bool grzegorzewski,
                        size_t levels,
                        struct FdFuzzyNumber **out);

/**
 * Whether `number` is a support median, within `tol`.
 *
 * # Safety
 * Handles must be live; `out` writable.
 */
enum FdStatus fd_is_support_median(const struct FdBackend *backend,
                                   const struct FdFuzzyNumber *number,
                                   double tol,
                                   size_t levels,
                                   bool *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FUZZY_DEPTH_H */
