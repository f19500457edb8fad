/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#ifndef LAMBFLUX_H
#define LAMBFLUX_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Spectral density tags accepted by the `kind` arguments.
 */
#define LF_SPECTRAL_DRUDE 0

#define LF_SPECTRAL_HARD 1

#define LF_SPECTRAL_GAUSSIAN 2

typedef enum LfStatus {
  LF_STATUS_OK = 0,
  LF_STATUS_NULL_POINTER = 1,
  LF_STATUS_INVALID_ARGUMENT = 2,
  LF_STATUS_DOMAIN = 3,
  LF_STATUS_QUADRATURE = 4,
  LF_STATUS_SERIES = 5,
  LF_STATUS_POLE_NEAR_CUTOFF = 6,
  LF_STATUS_COT_POLE = 7,
  LF_STATUS_DEGENERATE = 8,
  LF_STATUS_MISSING_LAMB = 9,
  LF_STATUS_ROUTE_MISMATCH = 10,
  LF_STATUS_CONFIG = 11,
  LF_STATUS_IO = 12,
  LF_STATUS_BUFFER_TOO_SMALL = 13,
  LF_STATUS_PANIC = 14,
} LfStatus;

/**
 * Opaque model: system, baths and evaluation settings.
 */
typedef struct LfModel LfModel;

typedef struct LfSpectrum {
  double alpha;
  double beta;
  double phi;
  double theta;
  double phi_plus;
  double phi_minus;
  double omega1;
  double omega2;
  /**
   * `(-beta, beta, alpha, -alpha)`.
   */
  double eigenvalues[4];
} LfSpectrum;

/**
 * Per-channel arrays are ordered `(j, mu) = (1,1), (1,2), (2,1), (2,2)`.
 */
typedef struct LfLambShift {
  double delta[4];
  double delta_prime[4];
  double r[4];
  double r_estimate[4];
  double level_shifts[4];
  double increments[2];
  double margins[2];
} LfLambShift;

typedef struct LfHeatCurrent {
  double with_lamb;
  double no_lamb;
  double difference;
  double a[2];
  double increments[2];
  double supremum;
} LfHeatCurrent;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Creates a model with `T_1 = t1` and both baths of the same `kind` and
 * cutoff `omega_d`. On success `*out` owns a handle for [`lf_model_free`].
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for a pointer.
 */
enum LfStatus lf_model_new(double epsilon1,
                           double epsilon2,
                           double g,
                           int kind,
                           double gamma1,
                           double gamma2,
                           double omega_d,
                           double t1,
                           struct LfModel **out);

/**
 * Releases a model. Null is ignored.
 *
 * # Safety
 * `m` must come from [`lf_model_new`] and not be used afterwards.
 */
void lf_model_free(struct LfModel *m);

/**
 * # Safety
 * `m` must be a live model and `out` writable.
 */
enum LfStatus lf_model_spectrum(const struct LfModel *m, struct LfSpectrum *out);

/**
 * Shift integrals and increments at `T_2 = T_1 + dt`.
 *
 * # Safety
 * `m` must be a live model and `out` writable.
 */
enum LfStatus lf_model_lamb_shift(const struct LfModel *m, double dt, struct LfLambShift *out);

/**
 * Eigenbasis populations `(rho_11, rho_22, rho_33, rho_44)` at `dt`.
 *
 * # Safety
 * `m` must be a live model and `out` must point to 4 writable doubles.
 */
enum LfStatus lf_model_steady_state(const struct LfModel *m, double dt, double *out);

/**
 * Bath-1 heat current with and without the Lamb shift at `dt`.
 *
 * # Safety
 * `m` must be a live model and `out` writable.
 */
enum LfStatus lf_model_heat_current(const struct LfModel *m, double dt, struct LfHeatCurrent *out);

/**
 * Bose occupation `1/(exp(omega/t) - 1)`.
 *
 * # Safety
 * `out` must be writable.
 */
enum LfStatus lf_bose_occupation(double omega, double t, double *out);

/**
 * `Gamma(+omega)` for `sign > 0`, `Gamma(-omega)` for `sign < 0`.
 *
 * # Safety
 * `out` must be writable.
 */
enum LfStatus lf_gamma_rate(int kind,
                            double gamma,
                            double omega_d,
                            double t,
                            double omega,
                            int sign,
                            double *out);

/**
 * Runs a sweep over `count` values of `dt` in `[dt_min, dt_max]`
 * (`log_spacing != 0` for a log grid) and writes the CSV, NUL-terminated,
 * into `buf`. `*written` receives the required size including the NUL;
 * if `len` is too small nothing is written and `BUFFER_TOO_SMALL` is
 * returned, so a call with `buf = NULL, len = 0` queries the size.
 *
 * # Safety
 * `m` must be a live model, `written` writable and `buf` valid for `len` bytes.
 */
enum LfStatus lf_sweep_csv(const struct LfModel *m,
                           double dt_min,
                           double dt_max,
                           size_t count,
                           int log_spacing,
                           int include_lamb,
                           char *buf,
                           size_t len,
                           size_t *written);

/**
 * Message of the last failure on this thread (empty after a success).
 * Valid until the next call into this library on the same thread.
 */
const char *lf_last_error_message(void);

/**
 * Static name of a status code, or "UNKNOWN".
 */
const char *lf_status_name(int status);

/**
 * Library version, static string.
 */
const char *lf_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LAMBFLUX_H */
