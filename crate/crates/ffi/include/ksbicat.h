#ifndef KSBICAT_H
#define KSBICAT_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible entry point.
 */
typedef enum KsStatus {
  KS_STATUS_OK = 0,
  KS_STATUS_NULL_POINTER = 1,
  KS_STATUS_INVALID_UTF8 = 2,
  /**
   * Malformed or invalid instance, unknown name, bad argument.
   */
  KS_STATUS_INPUT = 3,
  /**
   * A certificate could not be produced; the result may be partial.
   */
  KS_STATUS_INCOMPLETE = 4,
  /**
   * An identity failed to verify.
   */
  KS_STATUS_VERIFICATION = 5,
  KS_STATUS_OUT_OF_RANGE = 6,
  /**
   * A Rust panic was caught at the boundary.
   */
  KS_STATUS_PANIC = 7,
} KsStatus;

/**
 * The result of a block decomposition.
 */
typedef struct KsDecomposition KsDecomposition;

/**
 * A loaded and validated instance file.
 */
typedef struct KsInstance KsInstance;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread, or NULL. Valid until the next
 * call into this library on the same thread; do not free.
 */
const char *ks_last_error(void);

/**
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void ks_string_free(char *s);

/**
 * Parses and validates an instance given as JSON text.
 *
 * # Safety
 * `json` must be a NUL-terminated string, `out` a writable pointer.
 */
enum KsStatus ks_instance_from_json(const char *json, struct KsInstance **out);

/**
 * Reads and validates an instance file.
 *
 * # Safety
 * `path` must be a NUL-terminated string, `out` a writable pointer.
 */
enum KsStatus ks_instance_read(const char *path, struct KsInstance **out);

/**
 * # Safety
 * `inst` must come from this library and not have been freed. NULL is ignored.
 */
void ks_instance_free(struct KsInstance *inst);

/**
 * Decomposes the named algebra into blocks. A `seed` of zero means the
 * deterministic search; any other value drives the randomized one.
 *
 * A decomposition whose last factorization could not be certified is still
 * returned, together with [`KsStatus::Incomplete`].
 *
 * # Safety
 * `inst` must be a live handle, `algebra` a NUL-terminated string, `out` writable.
 */
enum KsStatus ks_decompose(const struct KsInstance *inst,
                           const char *algebra,
                           uint64_t seed,
                           struct KsDecomposition **out);

/**
 * # Safety
 * `d` must come from this library and not have been freed. NULL is ignored.
 */
void ks_decomposition_free(struct KsDecomposition *d);

/**
 * Number of summands, or 0 for NULL.
 *
 * # Safety
 * `d` must be NULL or a live handle.
 */
size_t ks_decomposition_len(const struct KsDecomposition *d);

/**
 * # Safety
 * `d` must be NULL or a live handle.
 */
bool ks_decomposition_is_complete(const struct KsDecomposition *d);

/**
 * Dimension of summand `i`.
 *
 * # Safety
 * `d` must be a live handle, `out` writable.
 */
enum KsStatus ks_decomposition_summand_dim(const struct KsDecomposition *d, size_t i, size_t *out);

/**
 * Coordinates of the idempotent of summand `i` as a JSON array of exact
 * scalar strings. Free with [`ks_string_free`].
 *
 * # Safety
 * `d` must be a live handle, `out` writable.
 */
enum KsStatus ks_decomposition_idempotent(const struct KsDecomposition *d, size_t i, char **out);

/**
 * Runs a command-line invocation in process. `argv[0]` is the program name.
 * Returns the exit code the binary would return; stdout is written to
 * `*out` when `out` is not NULL (free with [`ks_string_free`]).
 *
 * # Safety
 * `argv` must hold `argc` NUL-terminated strings.
 */
int ks_run(int argc, const char *const *argv, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* KSBICAT_H */
