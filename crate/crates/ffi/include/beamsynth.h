#ifndef BEAMSYNTH_H
#define BEAMSYNTH_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum BsStatus {
  BS_STATUS_OK = 0,
  BS_STATUS_NULL_POINTER = 1,
  BS_STATUS_INVALID_UTF8 = 2,
  BS_STATUS_DIMENSION = 3,
  BS_STATUS_ARGUMENT = 4,
  BS_STATUS_UNSUPPORTED = 5,
  BS_STATUS_RESOLUTION = 6,
  BS_STATUS_OUT_OF_DOMAIN = 7,
  BS_STATUS_CONFIG = 8,
  BS_STATUS_DATA_INTEGRITY = 9,
  BS_STATUS_NUMERIC = 10,
  BS_STATUS_PARSE = 11,
  BS_STATUS_IO = 12,
  BS_STATUS_BUFFER_TOO_SMALL = 13,
  BS_STATUS_PANIC = 14,
} BsStatus;

/**
 * Synthesized weights together with the array they drive.
 */
typedef struct BsExcitation BsExcitation;

/**
 * A trained phase network with its geometry and input encoding.
 */
typedef struct BsMlp BsMlp;

/**
 * A sampled far-field pattern.
 */
typedef struct BsPattern BsPattern;

/**
 * Parameters for [`bs_synthesize`]. Start from [`bs_synth_params_default`].
 */
typedef struct BsSynthParams {
  size_t n_elements;
  double spacing_wl;
  double steer_deg;
  /**
   * Sector width in u = cos(theta).
   */
  double width_u;
  /**
   * Raised-cosine edge fraction in (0, 1]; 0 selects a hard sector.
   */
  double rolloff;
  bool angular_scaling;
  double sll_db;
  size_t n_bar;
} BsSynthParams;

typedef struct BsMetrics {
  double peak_deg;
  /**
   * NaN when `has_sll` is false.
   */
  double sll_db;
  bool has_sll;
  double hpbw_deg;
} BsMetrics;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *bs_version(void);

/**
 * Copy the calling thread's last error message into `buf` (NUL-terminated,
 * truncated to `len - 1` bytes). Returns the full message length in bytes,
 * excluding the terminator; 0 when no error is recorded.
 *
 * # Safety
 * `buf` must be null or point to `len` writable bytes.
 */
size_t bs_last_error_message(char *buf, size_t len);

/**
 * 16 elements at half-wave spacing, broadside, default sector and -30 dB
 * sidelobe designs.
 */
struct BsSynthParams bs_synth_params_default(void);

/**
 * Run one synthesis method (`"fourier"`, `"woodward-lawson"`,
 * `"schelkunoff"`, `"chebyshev"` or `"taylor"`).
 *
 * # Safety
 * `method` must be a NUL-terminated string, `params` a valid pointer and
 * `out` a writable handle slot.
 */
enum BsStatus bs_synthesize(const char *method,
                            const struct BsSynthParams *params,
                            struct BsExcitation **out);

/**
 * Build an excitation from amplitudes and phases in degrees.
 *
 * # Safety
 * `amplitudes` and `phases_deg` must each point to `n_elements` values.
 */
enum BsStatus bs_excitation_from_polar(size_t n_elements,
                                       double spacing_wl,
                                       const double *amplitudes,
                                       const double *phases_deg,
                                       struct BsExcitation **out);

/**
 * Number of elements; 0 for a null handle.
 *
 * # Safety
 * `h` must be null or a live handle.
 */
size_t bs_excitation_len(const struct BsExcitation *h);

/**
 * Copy amplitudes and phases (degrees, in (-180, 180]) into caller buffers
 * of at least `len` values.
 *
 * # Safety
 * `h` must be a live handle; the buffers must hold `len` values.
 */
enum BsStatus bs_excitation_polar(const struct BsExcitation *h,
                                  double *amplitudes,
                                  double *phases_deg,
                                  size_t len);

/**
 * # Safety
 * `h` must be null or a handle not yet freed.
 */
void bs_excitation_free(struct BsExcitation *h);

/**
 * Array factor on `start..=stop` degrees in steps of `step`.
 *
 * # Safety
 * `exc` must be a live handle and `out` a writable handle slot.
 */
enum BsStatus bs_pattern_compute(const struct BsExcitation *exc,
                                 double start_deg,
                                 double stop_deg,
                                 double step_deg,
                                 struct BsPattern **out);

/**
 * Number of samples; 0 for a null handle.
 *
 * # Safety
 * `p` must be null or a live handle.
 */
size_t bs_pattern_len(const struct BsPattern *p);

/**
 * Copy sample angles and normalized levels in dB.
 *
 * # Safety
 * `p` must be a live handle; the buffers must hold `len` values.
 */
enum BsStatus bs_pattern_values(const struct BsPattern *p,
                                double *theta_deg,
                                double *af_db,
                                size_t len);

/**
 * Peak direction, sidelobe level and half-power beamwidth.
 *
 * # Safety
 * `p` must be a live handle and `out` writable.
 */
enum BsStatus bs_pattern_metrics(const struct BsPattern *p, struct BsMetrics *out);

/**
 * # Safety
 * `p` must be null or a handle not yet freed.
 */
void bs_pattern_free(struct BsPattern *p);

/**
 * Load a model file written by `beamsynth train`.
 *
 * # Safety
 * `path` must be a NUL-terminated string and `out` a writable handle slot.
 */
enum BsStatus bs_mlp_load(const char *path, struct BsMlp **out);

/**
 * Network phases with Fourier amplitudes for `steer_deg` in [40, 140].
 *
 * # Safety
 * `mlp` must be a live handle and `out` a writable handle slot.
 */
enum BsStatus bs_mlp_predict(const struct BsMlp *mlp, double steer_deg, struct BsExcitation **out);

/**
 * # Safety
 * `mlp` must be null or a handle not yet freed.
 */
void bs_mlp_free(struct BsMlp *mlp);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BEAMSYNTH_H */
