#ifndef BRATIO_H
#define BRATIO_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum BrStatus {
  BR_STATUS_OK = 0,
  BR_STATUS_NULL_POINTER = 1,
  BR_STATUS_INVALID_RATES = 2,
  BR_STATUS_ASYMMETRIC_RATES = 3,
  BR_STATUS_INVALID_ARGUMENT = 4,
  BR_STATUS_SINGULAR_SYSTEM = 5,
  BR_STATUS_STIFFNESS_FAILURE = 6,
  BR_STATUS_NON_REAL_COHERENCE = 7,
  BR_STATUS_DIVISION_BY_ZERO = 8,
  BR_STATUS_NEGATIVE_WEIGHT = 9,
  BR_STATUS_TRUNCATION = 10,
  BR_STATUS_INVALID_PLASMA = 11,
  BR_STATUS_IO = 12,
  BR_STATUS_PANIC = 99,
} BrStatus;

typedef enum BrVariant {
  BR_VARIANT_V_SUBSYSTEM = 0,
  BR_VARIANT_FIVE_LEVEL = 1,
  BR_VARIANT_REDUCED = 2,
} BrVariant;

/**
 * Opaque assembled generator.
 */
typedef struct BrGenerator BrGenerator;

/**
 * Opaque validated rate set.
 */
typedef struct BrRates BrRates;

/**
 * Full rate parameter set. Line frequencies of zero are replaced by one.
 */
typedef struct BrRateParams {
  double gamma_a;
  double gamma_b;
  double gamma_uv;
  double gamma_e;
  double r_a;
  double r_b;
  double r_e;
  double r_uv;
  double p;
  double delta;
  double omega_vis;
  double omega_uv;
} BrRateParams;

typedef struct BrDensityMatrix {
  double pop_a;
  double pop_b;
  double pop_c;
  double pop_d;
  double pop_e;
  double coh_ab_re;
  double coh_ab_im;
  double coh_ca_re;
  double coh_ca_im;
  double coh_cb_re;
  double coh_cb_im;
  double coh_ad_re;
  double coh_ad_im;
} BrDensityMatrix;

typedef struct BrDressed {
  double rho_dd_dark;
  double rho_bb_bright;
  double rho_db;
} BrDressed;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. The pointer is
 * valid until the next `br_*` call on the same thread.
 */
const char *br_last_error_message(void);

/**
 * Static description of a status code.
 */
const char *br_status_string(enum BrStatus status);

/**
 * Validate `params` and store a new rate set in `*out`.
 *
 * # Safety
 * `params` must be NULL or point to a readable `BrRateParams`; `out` must be
 * NULL or writable.
 */
enum BrStatus br_rates_new(const struct BrRateParams *params, struct BrRates **out);

/**
 * Symmetric rate set (`r_a = r_b = r_vis`, `gamma_a = gamma_b = gamma_vis`).
 *
 * # Safety
 * `out` must be NULL or writable.
 */
enum BrStatus br_rates_simplified(double gamma_vis,
                                  double gamma_uv,
                                  double r_vis,
                                  double r_e,
                                  double r_uv,
                                  double p,
                                  struct BrRates **out);

/**
 * Replace the decay rate of the auxiliary level.
 *
 * # Safety
 * `rates` must be NULL or a live handle from `br_rates_new`.
 */
enum BrStatus br_rates_set_gamma_e(struct BrRates *rates, double gamma_e);

/**
 * # Safety
 * `rates` must be NULL or a handle not yet freed.
 */
void br_rates_free(struct BrRates *rates);

/**
 * Assemble the generator of `variant` for `rates`.
 *
 * # Safety
 * `rates` must be NULL or a live handle; `out` must be NULL or writable.
 */
enum BrStatus br_generator_new(const struct BrRates *rates,
                               enum BrVariant variant,
                               struct BrGenerator **out);

/**
 * # Safety
 * `gen` must be NULL or a handle not yet freed.
 */
void br_generator_free(struct BrGenerator *gen);

/**
 * # Safety
 * `gen` must be NULL or a live handle; `out` must be NULL or writable.
 */
enum BrStatus br_steady_state(const struct BrGenerator *gen, struct BrDensityMatrix *out);

/**
 * Slowest relaxation rate of `gen`. Fails with `SingularSystem` when the
 * generator has no decaying mode.
 *
 * # Safety
 * `gen` must be NULL or a live handle; `out` must be NULL or writable.
 */
enum BrStatus br_relaxation_gap(const struct BrGenerator *gen, double *out);

/**
 * Integrate from `initial` to `t_final` and store the final state.
 *
 * # Safety
 * `gen` must be NULL or a live handle; `initial` must be NULL or readable;
 * `out` must be NULL or writable.
 */
enum BrStatus br_evolve_final(const struct BrGenerator *gen,
                              const struct BrDensityMatrix *initial,
                              double t_final,
                              double dt_max,
                              double tol,
                              struct BrDensityMatrix *out);

/**
 * `(gamma_vis / gamma_uv) W_vis / rho_aa` for a given state.
 *
 * # Safety
 * `state` must be NULL or readable; `rates` NULL or a live handle; `out`
 * NULL or writable.
 */
enum BrStatus br_branching_ratio(const struct BrDensityMatrix *state,
                                 const struct BrRates *rates,
                                 double *out);

/**
 * Maximal-coherence deep-pump ratio.
 *
 * # Safety
 * `rates` must be NULL or a live handle; `out` NULL or writable.
 */
enum BrStatus br_branching_ratio_maxcoh(const struct BrRates *rates, double *out);

/**
 * Exact ratio without interference.
 *
 * # Safety
 * `rates` must be NULL or a live handle; `out` NULL or writable.
 */
enum BrStatus br_branching_ratio_nocoh(const struct BrRates *rates, double *out);

/**
 * Low- and high-density limits.
 *
 * # Safety
 * `rates` must be NULL or a live handle; `low` and `high` NULL or writable.
 */
enum BrStatus br_branching_ratio_limits(const struct BrRates *rates, double *low, double *high);

/**
 * Dark/bright populations of the `{a, b}` block.
 *
 * # Safety
 * `out` must be NULL or writable.
 */
enum BrStatus br_to_dressed(double pop_a,
                            double pop_b,
                            double coh_ab_re,
                            double coh_ab_im,
                            struct BrDressed *out);

/**
 * Thermal electron-impact rate `2 n_e kbar c sqrt(2 kT/(pi M)) exp(-E/kT)`
 * for one channel. Energies and `kT` in eV, `mass` in eV/c^2,
 * `cross_section` in cm^2.
 *
 * # Safety
 * `out` must be NULL or writable.
 */
enum BrStatus br_collision_rate(double n_e,
                                double temperature,
                                double mass,
                                double cross_section,
                                double energy,
                                double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BRATIO_H */
