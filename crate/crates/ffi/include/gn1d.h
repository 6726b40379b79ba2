#ifndef GN1D_H
#define GN1D_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Per-cell quantities that can be copied out of a simulation.
 */
typedef enum GnField {
  GN_FIELD_CENTER = 0,
  GN_FIELD_BED = 1,
  GN_FIELD_DEPTH = 2,
  GN_FIELD_DISCHARGE = 3,
  GN_FIELD_VELOCITY = 4,
  GN_FIELD_SURFACE = 5,
  /**
   * 1.0 where the last step flagged the cell as breaking, else 0.0.
   */
  GN_FIELD_BREAKING = 6,
} GnField;

typedef enum GnStatus {
  GN_STATUS_OK = 0,
  GN_STATUS_NULL_POINTER = 1,
  GN_STATUS_INVALID_ARGUMENT = 2,
  GN_STATUS_CONFIG = 3,
  GN_STATUS_NUMERICAL = 4,
  GN_STATUS_IO = 5,
  GN_STATUS_BUFFER_TOO_SMALL = 6,
  GN_STATUS_PANIC = 7,
} GnStatus;

/**
 * Opaque simulation handle.
 */
typedef struct GnSimulation GnSimulation;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL. The pointer stays
 * valid until the next call into this library from the same thread.
 */
const char *gn_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *gn_version(void);

/**
 * Builds a simulation from config text (the same format the CLI reads).
 * Relative reference-wave paths resolve against the working directory.
 *
 * # Safety
 * `config` must be a NUL-terminated string and `out` a writable pointer.
 */
enum GnStatus gn_simulation_new(const char *config, struct GnSimulation **out);

/**
 * Releases a handle. NULL is ignored.
 *
 * # Safety
 * `sim` must come from [`gn_simulation_new`] and not be used afterwards.
 */
void gn_simulation_free(struct GnSimulation *sim);

/**
 * One splitting step of size `dt`.
 *
 * # Safety
 * `sim` must be a live handle.
 */
enum GnStatus gn_simulation_step(struct GnSimulation *sim, double dt);

/**
 * One step with the size chosen by the configured time-step policy; the
 * size taken is written to `dt_taken` unless it is NULL.
 *
 * # Safety
 * `sim` must be a live handle; `dt_taken` NULL or writable.
 */
enum GnStatus gn_simulation_step_auto(struct GnSimulation *sim, double *dt_taken);

/**
 * Steps until `t_end`, landing on it exactly.
 *
 * # Safety
 * `sim` must be a live handle.
 */
enum GnStatus gn_simulation_advance_to(struct GnSimulation *sim, double t_end);

/**
 * # Safety
 * `sim` must be a live handle, `out` writable.
 */
enum GnStatus gn_simulation_time(const struct GnSimulation *sim, double *out);

/**
 * # Safety
 * `sim` must be a live handle, `out` writable.
 */
enum GnStatus gn_simulation_n_cells(const struct GnSimulation *sim, size_t *out);

/**
 * `∫ h dx` over the domain.
 *
 * # Safety
 * `sim` must be a live handle, `out` writable.
 */
enum GnStatus gn_simulation_mass(const struct GnSimulation *sim, double *out);

/**
 * # Safety
 * `sim` must be a live handle, `out` writable.
 */
enum GnStatus gn_simulation_energy(const struct GnSimulation *sim, double *out);

/**
 * Copies one per-cell field into `buf`, which must hold `len >= n_cells` values.
 *
 * # Safety
 * `sim` must be a live handle and `buf` valid for `len` writes.
 */
enum GnStatus gn_simulation_copy_field(const struct GnSimulation *sim,
                                       enum GnField field,
                                       double *buf,
                                       size_t len);

/**
 * Model phase and group velocity divided by the linear-theory values at
 * `kh0`, for a scheme with dispersion parameter `alpha` and time step `dt`.
 *
 * # Safety
 * `phase_ratio` and `group_ratio` must be writable.
 */
enum GnStatus gn_dispersion_ratios(double kh0,
                                   double h0,
                                   double g,
                                   double alpha,
                                   double dt,
                                   double *phase_ratio,
                                   double *group_ratio);

/**
 * Dispersion parameter minimizing the velocity error over `(0, kh_max]`.
 * `with_group` nonzero adds the group-velocity error to the objective.
 *
 * # Safety
 * `out` must be writable.
 */
enum GnStatus gn_optimize_alpha(double kh_max,
                                double dt,
                                double h0,
                                double g,
                                int with_group,
                                double *out);

/**
 * Dispersion parameter matching the linear phase velocity at a single `kh0`.
 *
 * # Safety
 * `out` must be writable.
 */
enum GnStatus gn_optimize_alpha_local(double kh0, double dt, double h0, double g, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GN1D_H */
