/* C ABI for the ustat-bounds library. Generated by cbindgen; do not edit. */

#ifndef USTAT_BOUNDS_H
#define USTAT_BOUNDS_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Baseline mean intervals.
typedef enum UbBaseline {
  UB_BASELINE_AUDIBERT = 0,
  UB_BASELINE_MAURER = 1,
} UbBaseline;

// Kernel selector.
typedef enum UbKernel {
  UB_KERNEL_MEAN = 0,
  UB_KERNEL_VARIANCE = 1,
} UbKernel;

// Which nuisance interval an empirical construction plugs in.
typedef enum UbPlugin {
  UB_PLUGIN_HOEFFDING = 0,
  UB_PLUGIN_BERNSTEIN = 1,
} UbPlugin;

// Guaranteed side of an interval.
typedef enum UbSide {
  UB_SIDE_UPPER = 0,
  UB_SIDE_LOWER = 1,
  UB_SIDE_TWO = 2,
} UbSide;

// Status codes returned by every function.
typedef enum UbStatus {
  UB_OK = 0,
  UB_NULL_POINTER = 1,
  UB_INVALID_ARGUMENT = 2,
  UB_SAMPLE_TOO_SMALL = 3,
  UB_CAP_EXCEEDED = 4,
  UB_VACUOUS_BOUND = 5,
  UB_OUT_OF_RANGE = 6,
  UB_UNSUPPORTED = 7,
} UbStatus;

// Opaque sample handle.
typedef struct UbSample UbSample;

// A computed interval: the point estimate, raw half-width and its
// decomposition, plus range-clipped endpoints.
typedef struct UbInterval {
  double center;
  double half_width;
  double variance_term;
  double cross_term;
  double linear_term;
  double lower;
  double upper;
} UbInterval;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static NUL-terminated string.
const char *ub_version(void);

// Copies `len` values into a new sample handle. Returns UbOk and writes
// the handle into `out`; the caller frees it with `ub_sample_free`.
//
// # Safety
// `values` must point to `len` readable doubles and `out` must be a valid
// pointer.
enum UbStatus ub_sample_new(const double *values, uintptr_t len, struct UbSample **out);

// Frees a sample handle. A null handle is a no-op.
//
// # Safety
// `sample` must be null or a handle from `ub_sample_new`, freed once.
void ub_sample_free(struct UbSample *sample);

// Number of points in the sample.
//
// # Safety
// `sample` must be a live handle.
uintptr_t ub_sample_len(const struct UbSample *sample);

// Compensated sample mean.
//
// # Safety
// `sample` must be a live handle; `out` a valid pointer.
enum UbStatus ub_sample_mean(const struct UbSample *sample, double *out);

// Unbiased sample variance (n >= 2).
//
// # Safety
// `sample` must be a live handle; `out` a valid pointer.
enum UbStatus ub_sample_variance(const struct UbSample *sample, double *out);

// U-statistic of the selected kernel, enumerating at most `cap`
// combinations (0 picks the default cap).
//
// # Safety
// `sample` must be a live handle; `out` a valid pointer.
enum UbStatus ub_ustat(const struct UbSample *sample,
                       enum UbKernel kernel,
                       uint64_t cap,
                       double *out);

// W-statistic of eta (or of the symmetrized eta-tilde) for the selected
// base kernel.
//
// # Safety
// `sample` must be a live handle; `out` a valid pointer.
enum UbStatus ub_wstat(const struct UbSample *sample,
                       enum UbKernel kernel,
                       bool symmetrized,
                       uint64_t cap,
                       double *out);

// Hoeffding-style interval comparing the sample variance with V_F X.
enum UbStatus ub_ci_variance_hoeffding(double s2,
                                       uintptr_t n,
                                       double delta,
                                       enum UbSide side,
                                       bool floor_free,
                                       struct UbInterval *out);

// Bernstein-style one-sided interval for the standard deviation.
enum UbStatus ub_ci_sd_bernstein(double s2,
                                 uintptr_t n,
                                 double delta,
                                 enum UbSide side,
                                 bool floor_free,
                                 struct UbInterval *out);

// Maurer-Pontil standard-deviation interval.
enum UbStatus ub_ci_sd_maurer(double s2,
                              uintptr_t n,
                              double delta,
                              enum UbSide side,
                              struct UbInterval *out);

// Interval comparing a W-statistic with the kernel variance.
enum UbStatus ub_ci_wstat(enum UbPlugin kind,
                          double w,
                          uintptr_t n,
                          uintptr_t m,
                          double delta,
                          enum UbSide side,
                          bool floor_free,
                          struct UbInterval *out);

// Empirical interval for theta around U_n with the W-statistic plugged in.
enum UbStatus ub_ci_ustat_empirical(enum UbPlugin kind,
                                    double u,
                                    double w,
                                    uintptr_t n,
                                    uintptr_t m,
                                    double delta,
                                    enum UbSide side,
                                    bool floor_free,
                                    struct UbInterval *out);

// Empirical mean interval from the variance-improved Hoeffding bound.
enum UbStatus ub_ci_mean_improved(enum UbPlugin kind,
                                  double xbar,
                                  double s2,
                                  uintptr_t n,
                                  double delta,
                                  enum UbSide side,
                                  bool as_printed,
                                  bool floor_free,
                                  struct UbInterval *out);

// Audibert or Maurer empirical Bernstein mean interval.
enum UbStatus ub_ci_mean_baseline(enum UbBaseline which,
                                  double xbar,
                                  double s2,
                                  uintptr_t n,
                                  double delta,
                                  struct UbInterval *out);

// Hoeffding tail bound for a U-statistic.
enum UbStatus ub_tail_hoeffding_ustat(uintptr_t n,
                                      uintptr_t m,
                                      double eps,
                                      double range_width,
                                      double *out);

// Bernstein tail bound for a U-statistic.
enum UbStatus ub_tail_bernstein_ustat(uintptr_t n,
                                      uintptr_t m,
                                      double eps,
                                      double sigma_sq,
                                      double c,
                                      double *out);

// Arcones absolute tail bound for a U-statistic of a kernel in [0, 1].
enum UbStatus ub_tail_arcones(uintptr_t n,
                              uintptr_t m,
                              double eps,
                              double varsigma_sq,
                              double *out);

// Classic Hoeffding mean tail bound.
enum UbStatus ub_tail_hoeffding_mean(uintptr_t n,
                                     double eps,
                                     double range_width,
                                     bool two_sided,
                                     double *out);

// Variance-improved Hoeffding mean tail bound.
enum UbStatus ub_tail_improved_hoeffding_mean(uintptr_t n,
                                              double eps,
                                              double range_width,
                                              double var,
                                              double *out);

// Classic Bernstein-type mean tail bound.
enum UbStatus ub_tail_bennett_mean(uintptr_t n,
                                   double eps,
                                   double big_sigma_sq,
                                   double c,
                                   bool two_sided,
                                   double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* USTAT_BOUNDS_H */
