#ifndef HYBRIDCOMB_H
#define HYBRIDCOMB_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum HcStatus {
  HC_STATUS_OK = 0,
  HC_STATUS_NULL_POINTER = 1,
  HC_STATUS_INVALID_PARAMETER = 2,
  HC_STATUS_OPAQUE_REGIME = 3,
  HC_STATUS_OUT_OF_RANGE = 4,
  HC_STATUS_BUFFER_TOO_SMALL = 5,
  HC_STATUS_NUMERICAL = 6,
  HC_STATUS_PANIC = 7,
} HcStatus;

typedef enum HcEdgeKind {
  // band function = +1, q = 0
  HC_EDGE_KIND_PLUS = 0,
  // band function = -1, q = pi/a
  HC_EDGE_KIND_MINUS = 1,
} HcEdgeKind;

// Opaque list of bands.
typedef struct HcBandList HcBandList;

// Opaque comb handle.
typedef struct HcComb HcComb;

// One allowed band, without its dispersion samples.
typedef struct HcBand {
  size_t index;
  double lower;
  double upper;
  enum HcEdgeKind lower_kind;
  enum HcEdgeKind upper_kind;
  int8_t curvature_sign;
  size_t n_samples;
} HcBand;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread; empty after a success.
// The pointer stays valid until the next call on the same thread.
const char *hc_last_error(void);

// One-species comb with couplings `w0`, `w1` and spacing `a`.
//
// # Safety
// `out` must be valid for writes.
enum HcStatus hc_comb_new_one(double w0, double w1, double a, struct HcComb **out);

// Two-species comb; the second node sits at distance `d` from the first.
//
// # Safety
// `out` must be valid for writes.
enum HcStatus hc_comb_new_two(double w0,
                              double w1,
                              double v0,
                              double v1,
                              double d,
                              double a,
                              struct HcComb **out);

// # Safety
// `comb` must come from `hc_comb_new_*` and not be used afterwards. Null is ignored.
void hc_comb_free(struct HcComb *comb);

// Band function `cos(qa)` at energy `epsilon`, from the closed form.
//
// # Safety
// `comb` must be a live handle, `out` valid for writes.
enum HcStatus hc_band_function(const struct HcComb *comb, double epsilon, double *out);

// Half trace of the cell transfer matrix at `epsilon`.
//
// # Safety
// `comb` must be a live handle, `out` valid for writes.
enum HcStatus hc_transfer_half_trace(const struct HcComb *comb, double epsilon, double *out);

// Density of states per cell at `epsilon`; zero in gaps, infinite on edges.
//
// # Safety
// `comb` must be a live handle, `out` valid for writes.
enum HcStatus hc_density_of_states(const struct HcComb *comb, double epsilon, double *out);

// Energy below which the comb has no allowed states.
//
// # Safety
// `comb` must be a live handle, `out` valid for writes.
enum HcStatus hc_default_eps_min(const struct HcComb *comb, double *out);

// Complete bands in `[eps_min, eps_max]`, each with `n_samples` dispersion points.
// A NaN `eps_min` selects the default lower limit.
//
// # Safety
// `comb` must be a live handle, `out` valid for writes.
enum HcStatus hc_bands(const struct HcComb *comb,
                       double eps_min,
                       double eps_max,
                       size_t n_samples,
                       struct HcBandList **out);

// # Safety
// `list` must come from `hc_bands` and not be used afterwards. Null is ignored.
void hc_band_list_free(struct HcBandList *list);

// Number of bands; zero for a null list.
//
// # Safety
// `list` must be null or a live handle.
size_t hc_band_list_len(const struct HcBandList *list);

// # Safety
// `list` must be a live handle, `out` valid for writes.
enum HcStatus hc_band_list_get(const struct HcBandList *list, size_t index, struct HcBand *out);

// Copies the dispersion of band `index` into `q` and `epsilon`, each of
// length `capacity`. Fails with `BufferTooSmall` if `capacity` is less than
// the band's `n_samples`.
//
// # Safety
// `list` must be a live handle; `q` and `epsilon` valid for `capacity` writes.
enum HcStatus hc_band_list_samples(const struct HcBandList *list,
                                   size_t index,
                                   double *q,
                                   double *epsilon,
                                   size_t capacity);

// First `count` eigenvalues of the opaque one-species comb (`|w1| = 1`),
// ascending, written to `out`.
//
// # Safety
// `out` must be valid for `count` writes (may be null when `count` is 0).
enum HcStatus hc_discrete_spectrum(double w0, double w1, double a, size_t count, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HYBRIDCOMB_H */
