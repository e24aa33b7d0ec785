#ifndef INVDIFF_H
#define INVDIFF_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. `PropertyFailed` is never returned; boolean answers go
 * through `out` parameters. It is reserved to mirror the CLI exit codes.
 */
typedef enum InvdiffStatus {
  INVDIFF_STATUS_OK = 0,
  INVDIFF_STATUS_PROPERTY_FAILED = 1,
  INVDIFF_STATUS_INVALID_INPUT = 2,
  INVDIFF_STATUS_NULL_POINTER = 3,
  INVDIFF_STATUS_INVALID_UTF8 = 4,
  INVDIFF_STATUS_PANIC = 5,
} InvdiffStatus;

/**
 * Opaque setup handle.
 */
typedef struct InvdiffSetup InvdiffSetup;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Loads a built-in preset, or a setup file if `name` is not a preset.
 *
 * # Safety
 * `name` must be a valid C string and `out` a valid pointer.
 */
enum InvdiffStatus invdiff_setup_load(const char *name, struct InvdiffSetup **out);

/**
 * Loads a setup from JSON text.
 *
 * # Safety
 * `json` must be a valid C string and `out` a valid pointer.
 */
enum InvdiffStatus invdiff_setup_load_json(const char *json, struct InvdiffSetup **out);

/**
 * # Safety
 * `setup` must come from a load function and not be used afterwards.
 */
void invdiff_setup_free(struct InvdiffSetup *setup);

/**
 * `dim g`, or 0 for a null handle.
 *
 * # Safety
 * `setup` must be null or a live handle.
 */
size_t invdiff_setup_dim(const struct InvdiffSetup *setup);

/**
 * `dim m`, or 0 for a null handle.
 *
 * # Safety
 * `setup` must be null or a live handle.
 */
size_t invdiff_setup_m_dim(const struct InvdiffSetup *setup);

/**
 * PBW normal form of `expr` read in `U(g)`.
 *
 * # Safety
 * Pointers must be valid; `out` receives a string to free with
 * [`invdiff_string_free`].
 */
enum InvdiffStatus invdiff_normalize(const struct InvdiffSetup *setup,
                                     const char *expr,
                                     char **out);

/**
 * Symmetrization of `expr` read in `S(g)`.
 *
 * # Safety
 * As for [`invdiff_normalize`].
 */
enum InvdiffStatus invdiff_symmetrize(const struct InvdiffSetup *setup,
                                      const char *expr,
                                      char **out);

/**
 * Canonical representative of `expr` modulo the ideal.
 *
 * # Safety
 * As for [`invdiff_normalize`].
 */
enum InvdiffStatus invdiff_project(const struct InvdiffSetup *setup, const char *expr, char **out);

/**
 * Whether `expr` (read in `U(g)`) lies in `D_mod`.
 *
 * # Safety
 * Pointers must be valid.
 */
enum InvdiffStatus invdiff_in_dmod(const struct InvdiffSetup *setup, const char *expr, bool *out);

/**
 * Degree-`degree` basis of `I_mod(m)`, one polynomial per line.
 *
 * # Safety
 * As for [`invdiff_normalize`].
 */
enum InvdiffStatus invdiff_imod_basis(const struct InvdiffSetup *setup, size_t degree, char **out);

/**
 * Whether `h` has an invariant complement.
 *
 * # Safety
 * Pointers must be valid.
 */
enum InvdiffStatus invdiff_is_reductive(const struct InvdiffSetup *setup, bool *out);

/**
 * Commutativity of the symmetrized invariants modulo the ideal, up to
 * total degree `max_degree`. Not-applicable counts as false.
 *
 * # Safety
 * Pointers must be valid.
 */
enum InvdiffStatus invdiff_check_commutativity(const struct InvdiffSetup *setup,
                                               size_t max_degree,
                                               bool *out);

/**
 * Message for the last failed call on this thread, or null. The pointer
 * stays valid until the next call into this library on the same thread.
 */
const char *invdiff_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, freed once.
 */
void invdiff_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* INVDIFF_H */
