#ifndef LIVSHIFT_H
#define LIVSHIFT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes.
 */
typedef enum {
  LIV_STATUS_OK = 0,
  LIV_STATUS_NULL_POINTER = 1,
  LIV_STATUS_INVALID_ARGUMENT = 2,
  LIV_STATUS_INVALID_TENSOR = 3,
  LIV_STATUS_COMPUTATION_FAILED = 4,
  LIV_STATUS_NOT_CONVERGED = 5,
  LIV_STATUS_PANIC = 6,
} LivStatus;

/**
 * Opaque coefficient tensor.
 */
typedef struct LivTensor LivTensor;

/**
 * One energy shift in Hartree.
 */
typedef struct {
  double value_hartree;
  double error_estimate;
  /**
   * Only meaningful when `has_reference` is set.
   */
  double reference_value_hartree;
  bool has_reference;
  bool discrepancy_flag;
} LivShift;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or null. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *liv_last_error(void);

/**
 * Tensor with `(K_F)_{0j0k} = k` for all spatial `j, k`.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage.
 */
LivStatus liv_tensor_uniform(double k, LivTensor **out);

/**
 * Tensor from a row-major symmetric 3×3 `κ`.
 *
 * # Safety
 * `kappa` must point to 9 readable doubles; `out` must be writable.
 */
LivStatus liv_tensor_from_kappa(const double *kappa, LivTensor **out);

/**
 * Tensor from JSON text with one of the keys `uniform`, `kappa`, `components`.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
LivStatus liv_tensor_from_json(const char *json, LivTensor **out);

/**
 * Releases a tensor. Null is ignored.
 *
 * # Safety
 * `t` must come from a `liv_tensor_*` constructor and not be used afterwards.
 */
void liv_tensor_free(LivTensor *t);

/**
 * Component `(K_F)_{abcd}` with symmetry sign applied.
 *
 * # Safety
 * `t` must be a live handle; `out` must be writable.
 */
LivStatus liv_tensor_get(const LivTensor *t,
                         uint32_t a,
                         uint32_t b,
                         uint32_t c,
                         uint32_t d,
                         double *out);

/**
 * `A₀` of a charge `q` at the origin, evaluated at `x`.
 *
 * # Safety
 * `x` must point to 3 doubles; `out` must be writable.
 */
LivStatus liv_scalar_potential(const LivTensor *t, double q, const double *x, double *out);

/**
 * Electric field of a charge `q` at the origin, evaluated at `x`.
 *
 * # Safety
 * `x` must point to 3 doubles; `out` must point to 3 writable doubles.
 */
LivStatus liv_electric_field(const LivTensor *t, double q, const double *x, double *out);

/**
 * Diagonal shift of a hydrogen-like level from the modified Coulomb potential.
 *
 * # Safety
 * `t` must be a live handle; `out` must be writable.
 */
LivStatus liv_hydrogen_shift(const LivTensor *t,
                             double z,
                             uint32_t n,
                             uint32_t l,
                             int32_t m,
                             LivShift *out);

/**
 * Shift from the tensor-dependent part of the internal electric field.
 *
 * # Safety
 * `t` must be a live handle; `out` must be writable.
 */
LivStatus liv_stark_shift(const LivTensor *t,
                          double z,
                          uint32_t n,
                          uint32_t l,
                          int32_t m,
                          LivShift *out);

/**
 * Spin-orbit shift of level `(n, l, j = twice_j/2)`.
 *
 * # Safety
 * `t` must be a live handle; `out` must be writable.
 */
LivStatus liv_spin_orbit_shift(const LivTensor *t,
                               double z,
                               uint32_t n,
                               uint32_t l,
                               int32_t m,
                               uint32_t twice_j,
                               LivShift *out);

/**
 * Helium-like ground-state shift; the electron-electron term uses
 * `mc_samples` Monte Carlo draws from `seed`.
 *
 * # Safety
 * `t` must be a live handle; `out` must be writable.
 */
LivStatus liv_helium_shift(const LivTensor *t,
                           double z,
                           uint64_t mc_samples,
                           uint64_t seed,
                           LivShift *out);

/**
 * Bound table as JSON. Release the string with [`liv_string_free`].
 *
 * # Safety
 * `out` must be writable.
 */
LivStatus liv_bound_table_json(double accuracy_ev, uint64_t mc_samples, uint64_t seed, char **out);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void liv_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LIVSHIFT_H */
