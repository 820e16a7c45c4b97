/* tomokit C ABI: tomographic-probability toolkit. */

#pragma once

/* Generated with cbindgen:0.29.4 */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every tomokit call.
typedef enum TkStatus {
  // Success.
  TK_OK = 0,
  // A required pointer argument was null.
  TK_NULL_POINTER = 1,
  // A string argument was not valid UTF-8.
  TK_UTF8 = 2,
  // Invalid argument (parse error, out-of-range parameter, shape
  // mismatch).
  TK_INVALID_ARGUMENT = 3,
  // Numerical failure (decay precondition, eigensolver refutation).
  TK_NUMERICAL = 4,
  // File input/output failure.
  TK_IO = 5,
} TkStatus;

// Opaque optical tomogram handle.
typedef struct TkOptical TkOptical;

// Opaque continuous-variable state handle (wraps its symplectic tomogram
// evaluator).
typedef struct TkState TkState;

// Classification record of a tomogram.
typedef struct TkClassification {
  // 1 when the inverse Radon transform stays nonnegative.
  int32_t classical;
  // 1 when the reconstructed density matrix is positive semidefinite.
  int32_t quantum;
  double min_phase_space_value;
  double min_density_eigenvalue;
} TkClassification;

// Fidelity extracted from two optical tomograms.
typedef struct TkFidelity {
  double fidelity;
  double im_residual;
  // 1 when 0 <= F <= 1 within 1e-3.
  int32_t bounds_ok;
} TkFidelity;

// Haar-average entropy report.
typedef struct TkHaarAverage {
  double mean;
  // Standard error of the mean. (Named to dodge the C stdio macro.)
  double std_error;
  double bound_residual;
  double column_mean;
  double column_std_error;
  double column_residual;
} TkHaarAverage;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Version string of the library; static storage, do not free.
const char *tomokit_version(void);

// Most recent error message on this thread, or null when none. The caller
// owns the returned string and must release it with `tomokit_string_free`.
char *tomokit_last_error_message(void);

// Release a string returned by this library.
//
// # Safety
// `s` must have been returned by a tomokit function and not freed before.
void tomokit_string_free(char *s);

// Build a continuous-variable state from a spec string.
//
// # Safety
// `spec` must be a valid NUL-terminated string; `out` must be writable.
enum TkStatus tomokit_state_new(const char *spec, struct TkState **out);

// # Safety
// `state` must come from `tomokit_state_new` and not be freed twice.
void tomokit_state_free(struct TkState *state);

// Symplectic tomogram density M(X, mu, nu).
//
// # Safety
// `state` must be a live handle; `out` must be writable.
enum TkStatus tomokit_symplectic_eval(const struct TkState *state,
                                      double x,
                                      double mu,
                                      double nu,
                                      double *out);

// Raw moment of the position (which = 0) or momentum (which = 1)
// distribution.
//
// # Safety
// `state` must be a live handle; `out` must be writable.
enum TkStatus tomokit_state_moment(const struct TkState *state,
                                   uint32_t order,
                                   int32_t which,
                                   double *out);

// Shannon entropic-uncertainty residual S(theta) + S(theta + pi/2) -
// ln(pi e).
//
// # Safety
// `state` must be a live handle; `out` must be writable.
enum TkStatus tomokit_entropic_ur_residual(const struct TkState *state, double theta, double *out);

// Renyi conjugate-pair residual at angle theta for q in (0, 1).
//
// # Safety
// `state` must be a live handle; `out` must be writable.
enum TkStatus tomokit_renyi_ur_residual(const struct TkState *state,
                                        double theta,
                                        double q,
                                        double *out);

// Classify a state's tomogram as classical / quantum / both / neither.
//
// # Safety
// `state` must be a live handle; `out` must be writable.
enum TkStatus tomokit_classify(const struct TkState *state, struct TkClassification *out);

// Compute the optical tomogram of a state on `ntheta` angles in [0, 2 pi).
//
// # Safety
// `state` must be a live handle; `out` must be writable.
enum TkStatus tomokit_optical_new(const struct TkState *state,
                                  size_t ntheta,
                                  struct TkOptical **out);

// # Safety
// `optical` must come from a tomokit constructor and not be freed twice.
void tomokit_optical_free(struct TkOptical *optical);

// Grid shape of an optical tomogram.
//
// # Safety
// `optical` must be a live handle; out-pointers must be writable.
enum TkStatus tomokit_optical_shape(const struct TkOptical *optical, size_t *nx, size_t *ntheta);

// Stored density w(X, theta) at grid indices.
//
// # Safety
// `optical` must be a live handle; `out` must be writable.
enum TkStatus tomokit_optical_value(const struct TkOptical *optical,
                                    size_t itheta,
                                    size_t ix,
                                    double *out);

// Write an optical tomogram in the `tomokit optical v1` CSV format.
//
// # Safety
// `optical` must be a live handle; `path` must be a valid string.
enum TkStatus tomokit_optical_save(const struct TkOptical *optical, const char *path);

// Load an optical tomogram from the `tomokit optical v1` CSV format.
//
// # Safety
// `path` must be a valid string; `out` must be writable.
enum TkStatus tomokit_optical_load(const char *path, struct TkOptical **out);

// Fidelity between the states behind two optical tomograms.
//
// # Safety
// Both handles must be live; `out` must be writable.
enum TkStatus tomokit_fidelity(const struct TkOptical *a,
                               const struct TkOptical *b,
                               struct TkFidelity *out);

// Haar-average Shannon tomographic entropy of a spin state against the
// (1/2) ln N group-average bound.
//
// # Safety
// `spin_spec` must be a valid string; `out` must be writable.
enum TkStatus tomokit_haar_average(const char *spin_spec,
                                   size_t samples,
                                   uint64_t seed,
                                   struct TkHaarAverage *out);

// Smallest QFT conjugate-pair inequality residual over Haar-random frames
// at (alpha, beta) = (2, 2/3); nonnegative for genuine states.
//
// # Safety
// `spin_spec` must be a valid string; `out` must be writable.
enum TkStatus tomokit_spin_qft_min_residual(const char *spin_spec,
                                            size_t samples,
                                            uint64_t seed,
                                            double *out);

// Run the acceptance suite; returns the number of failing criteria
// (0 on a healthy build, negative on an execution error).
int32_t tomokit_selftest(uint64_t seed);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus
