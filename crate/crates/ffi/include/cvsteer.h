#ifndef CVSTEER_H
#define CVSTEER_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes returned by every fallible function.
 */
typedef enum CvsStatus {
  CVS_STATUS_OK = 0,
  CVS_STATUS_NULL_POINTER = 1,
  CVS_STATUS_INVALID_ARGUMENT = 2,
  CVS_STATUS_PARSE_ERROR = 3,
  CVS_STATUS_ARITY_ERROR = 4,
  CVS_STATUS_NUMERICAL_ERROR = 5,
  CVS_STATUS_IO_ERROR = 6,
  CVS_STATUS_BUFFER_TOO_SMALL = 7,
  CVS_STATUS_PANIC = 8,
} CvsStatus;

/**
 * Outcome kind of [`cvs_critical_eta`].
 */
typedef enum CvsCrossingKind {
  CVS_CROSSING_KIND_THRESHOLD = 0,
  CVS_CROSSING_KIND_NEVER_STEERS = 1,
  CVS_CROSSING_KIND_ALWAYS_STEERS = 2,
} CvsCrossingKind;

/**
 * Opaque covariance matrix with its mode labels.
 */
typedef struct CvsCovariance CvsCovariance;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *cvs_version(void);

/**
 * Copies the calling thread's last error message into `buf` and returns
 * the buffer size it needs including the terminating NUL, or 0 when the
 * last call succeeded. Nothing is copied if `buf` is null or too small.
 *
 * # Safety
 * `buf` must be null or valid for `len` bytes.
 */
size_t cvs_last_error_message(char *buf, size_t len);

/**
 * Builds a covariance matrix from `dim × dim` row-major entries, where
 * `dim = 2 · n_modes`.
 *
 * # Safety
 * `data` must be valid for `len` reads; `out` must be writable.
 */
enum CvsStatus cvs_covariance_from_matrix(size_t n_modes,
                                          const double *data,
                                          size_t len,
                                          struct CvsCovariance **out);

/**
 * Parses a covariance JSON document.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum CvsStatus cvs_covariance_from_json(const char *json, struct CvsCovariance **out);

/**
 * Serializes to a newly allocated JSON string, released with
 * [`cvs_string_free`].
 *
 * # Safety
 * `h` must be a live handle; `out` must be writable.
 */
enum CvsStatus cvs_covariance_to_json(const struct CvsCovariance *h, char **out);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void cvs_string_free(char *s);

/**
 * # Safety
 * `h` must be null or a live handle; it is invalid afterwards.
 */
void cvs_covariance_free(struct CvsCovariance *h);

/**
 * # Safety
 * `h` must be a live handle; `out` must be writable.
 */
enum CvsStatus cvs_covariance_n_modes(const struct CvsCovariance *h, size_t *out);

/**
 * Copies the `(2n)²` row-major entries into `buf`.
 *
 * # Safety
 * `h` must be a live handle; `buf` must be valid for `len` writes.
 */
enum CvsStatus cvs_covariance_copy_matrix(const struct CvsCovariance *h, double *buf, size_t len);

/**
 * Lossless four-mode square cluster with squeezing `r`.
 *
 * # Safety
 * `out` must be writable.
 */
enum CvsStatus cvs_square_cluster(double r, struct CvsCovariance **out);

/**
 * New handle holding `h` after loss with transmission `eta` on `mode`.
 *
 * # Safety
 * `h` must be a live handle; `out` must be writable.
 */
enum CvsStatus cvs_apply_loss(const struct CvsCovariance *h,
                              size_t mode,
                              double eta,
                              struct CvsCovariance **out);

/**
 * Writes the `n` symplectic eigenvalues in ascending order.
 *
 * # Safety
 * `h` must be a live handle; `buf` must be valid for `len` writes.
 */
enum CvsStatus cvs_symplectic_eigenvalues(const struct CvsCovariance *h, double *buf, size_t len);

/**
 * # Safety
 * `h` must be a live handle; both outputs must be writable.
 */
enum CvsStatus cvs_is_physical(const struct CvsCovariance *h,
                               bool *out_physical,
                               double *out_min_eigenvalue);

/**
 * Steerability of the `steered` modes by the `steering` modes.
 *
 * # Safety
 * `h` must be a live handle; the mode arrays must be valid for their
 * lengths; `out` must be writable.
 */
enum CvsStatus cvs_gaussian_steering(const struct CvsCovariance *h,
                                     const size_t *steering,
                                     size_t n_steering,
                                     const size_t *steered,
                                     size_t n_steered,
                                     double *out);

/**
 * Transmission on `lossy_mode` of the square cluster at which steering
 * across the partition switches. `out_eta` is NaN unless the kind is
 * `Threshold`.
 *
 * # Safety
 * The mode arrays must be valid for their lengths; both outputs must be
 * writable.
 */
enum CvsStatus cvs_critical_eta(double r,
                                const size_t *steering,
                                size_t n_steering,
                                const size_t *steered,
                                size_t n_steered,
                                size_t lossy_mode,
                                enum CvsCrossingKind *out_kind,
                                double *out_eta);

/**
 * Writes the four cluster nullifier variances into `out[0..4]`.
 *
 * # Safety
 * `h` must be a live handle; `out` must be valid for 4 writes.
 */
enum CvsStatus cvs_nullifier_variances(const struct CvsCovariance *h, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CVSTEER_H */
