#ifndef HELGASON_MOIRE_H
#define HELGASON_MOIRE_H

/* Generated by cbindgen from crates/ffi; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every call.
 */
typedef enum HmStatus {
  HM_STATUS_OK = 0,
  HM_STATUS_INVALID_ARGUMENT = 1,
  HM_STATUS_NULL_POINTER = 2,
  HM_STATUS_OUTSIDE_DISK = 3,
  HM_STATUS_NOT_IN_GROUP = 4,
  HM_STATUS_UNDER_RESOLVED = 5,
  HM_STATUS_SPECTRAL_SINGULARITY = 6,
  HM_STATUS_SUPPORT_OVERFLOW = 7,
  HM_STATUS_SPECTRAL_TRUNCATION = 8,
  HM_STATUS_NOT_RADIAL = 9,
  HM_STATUS_GRID_MISMATCH = 10,
  HM_STATUS_BUFFER_TOO_SMALL = 11,
  HM_STATUS_PANIC = 12,
} HmStatus;

typedef enum HmTaperKind {
  HM_TAPER_KIND_GAUSSIAN = 0,
  HM_TAPER_KIND_COSINE = 1,
  HM_TAPER_KIND_HARD = 2,
} HmTaperKind;

/**
 * Samples of a field on a polar grid.
 */
typedef struct HmField HmField;

/**
 * Transform values on a `(λ, direction)` grid.
 */
typedef struct HmSpectrum HmSpectrum;

typedef struct HmComplex {
  double re;
  double im;
} HmComplex;

/**
 * One regularized horocyclic superposition against its target wave.
 */
typedef struct HmMoireReport {
  double lambda;
  /**
   * Boundary direction as an angle.
   */
  double b0;
  struct HmComplex x;
  struct HmComplex approx;
  struct HmComplex target;
  double abs_error;
  enum HmTaperKind taper_kind;
  double taper_width;
  double quadrature_error;
} HmMoireReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or null. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *hm_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *hm_version(void);

/**
 * `e_{λ,b}(z)` with `b = e^{i b0}`.
 *
 * # Safety
 * `out` must be valid for one write.
 */
enum HmStatus hm_helgason_wave(double lambda, double b0, struct HmComplex z, struct HmComplex *out);

/**
 * `φ_λ(z)` by adaptive boundary quadrature.
 *
 * # Safety
 * `out` must be valid for one write.
 */
enum HmStatus hm_spherical(double lambda, struct HmComplex z, struct HmComplex *out);

/**
 * `φ_λ` at geodesic distance `d` from the origin.
 *
 * # Safety
 * `out` must be valid for one write.
 */
enum HmStatus hm_spherical_radial(double lambda, double d, double *out);

/**
 * `⟨z, b⟩` with `b = e^{i b0}`.
 *
 * # Safety
 * `out` must be valid for one write.
 */
enum HmStatus hm_busemann(struct HmComplex z, double b0, double *out);

/**
 * Geodesic distance between two disk points.
 *
 * # Safety
 * `out` must be valid for one write.
 */
enum HmStatus hm_distance(struct HmComplex z, struct HmComplex w, double *out);

/**
 * Zero field on a polar grid of `radial × angular` nodes out to geodesic
 * `radius`. With `closed` the first ring is the origin.
 *
 * # Safety
 * `out` must be valid for one write.
 */
enum HmStatus hm_field_create(size_t radial,
                              size_t angular,
                              double radius,
                              bool closed,
                              struct HmField **out);

/**
 * Number of nodes, ring-major.
 *
 * # Safety
 * `field` must be a live handle; `out` valid for one write.
 */
enum HmStatus hm_field_len(const struct HmField *field, size_t *out);

/**
 * Copies the node coordinates into `out[0..len)`.
 *
 * # Safety
 * `field` must be a live handle; `out` valid for `len` writes.
 */
enum HmStatus hm_field_nodes(const struct HmField *field, struct HmComplex *out, size_t len);

/**
 * Copies the sample values into `out[0..len)`.
 *
 * # Safety
 * `field` must be a live handle; `out` valid for `len` writes.
 */
enum HmStatus hm_field_values(const struct HmField *field, struct HmComplex *out, size_t len);

/**
 * Replaces the sample values; `len` must equal the node count.
 *
 * # Safety
 * `field` must be a live handle; `values` valid for `len` reads.
 */
enum HmStatus hm_field_set_values(struct HmField *field,
                                  const struct HmComplex *values,
                                  size_t len);

/**
 * Releases a field; null is ignored.
 *
 * # Safety
 * `field` must be null or a handle not yet freed.
 */
void hm_field_free(struct HmField *field);

/**
 * Forward transform on `λ = 0, step, …, lambda_max` and `directions`
 * equally spaced boundary points.
 *
 * # Safety
 * `field` must be a live handle; `out` valid for one write.
 */
enum HmStatus hm_forward(const struct HmField *field,
                         double lambda_max,
                         double lambda_step,
                         size_t directions,
                         struct HmSpectrum **out);

/**
 * Number of λ values and of directions.
 *
 * # Safety
 * `spectrum` must be a live handle; both outputs valid for one write.
 */
enum HmStatus hm_spectrum_shape(const struct HmSpectrum *spectrum,
                                size_t *lambdas,
                                size_t *directions);

/**
 * Copies the values, λ-major, into `out[0..len)`.
 *
 * # Safety
 * `spectrum` must be a live handle; `out` valid for `len` writes.
 */
enum HmStatus hm_spectrum_values(const struct HmSpectrum *spectrum,
                                 struct HmComplex *out,
                                 size_t len);

/**
 * Releases a spectrum; null is ignored.
 *
 * # Safety
 * `spectrum` must be null or a handle not yet freed.
 */
void hm_spectrum_free(struct HmSpectrum *spectrum);

/**
 * Inverse transform onto the grid of `like`. `kappa` is the Plancherel
 * constant; pass 0 for the calibrated one.
 *
 * # Safety
 * `spectrum` and `like` must be live handles; `out` valid for one write.
 */
enum HmStatus hm_inverse(const struct HmSpectrum *spectrum,
                         const struct HmField *like,
                         double kappa,
                         struct HmField **out);

/**
 * Regularized superposition of `φ_λ` along the horocycle of direction `b0`
 * through the origin, evaluated at `x`.
 *
 * # Safety
 * `out` must be valid for one write.
 */
enum HmStatus hm_moire_integral(double lambda,
                                double b0,
                                struct HmComplex x,
                                enum HmTaperKind taper_kind,
                                double taper_width,
                                struct HmMoireReport *out);

/**
 * Average of `φ_λ` centered at `n` points spaced `spacing` apart on the
 * horocycle of direction `b0` through the origin, sampled on a closed polar
 * grid.
 *
 * # Safety
 * `out` must be valid for one write.
 */
enum HmStatus hm_moire_sum(double lambda,
                           double b0,
                           size_t n,
                           double spacing,
                           size_t radial,
                           size_t angular,
                           double radius,
                           struct HmField **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HELGASON_MOIRE_H */
