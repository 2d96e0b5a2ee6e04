#ifndef QHOMOLOGY_H
#define QHOMOLOGY_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum QhStatus {
  QH_STATUS_OK = 0,
  QH_STATUS_NULL_POINTER = 1,
  QH_STATUS_INVALID_HEIGHT = 2,
  QH_STATUS_INVALID_ARGUMENT = 3,
  QH_STATUS_PARSE = 4,
  QH_STATUS_NOT_NILPOTENT = 5,
  QH_STATUS_MODEL = 6,
  QH_STATUS_BUFFER_TOO_SMALL = 7,
  QH_STATUS_INTERNAL = 8,
} QhStatus;

/**
 * A square matrix over the cyclotomic field of its height.
 */
typedef struct QhMatrix QhMatrix;

/**
 * A built zero-mode model.
 */
typedef struct QhModel QhModel;

/**
 * A suite report, held as its JSON text.
 */
typedef struct QhReport QhReport;

typedef struct QhModelDims {
  uintptr_t h;
  uintptr_t fock_dim;
  uintptr_t state_dim;
  uintptr_t invariant_dim;
} QhModelDims;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread, or NULL. Valid until the next failing call.
 */
const char *qh_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *qh_version(void);

/**
 * Builds the zero-mode model at height `h`.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle.
 */
enum QhStatus qh_model_build(uint32_t h, struct QhModel **out);

/**
 * # Safety
 * `model` must be NULL or a handle from [`qh_model_build`] not yet freed.
 */
void qh_model_free(struct QhModel *model);

/**
 * # Safety
 * `model` must be a live handle and `out` writable.
 */
enum QhStatus qh_model_dims(const struct QhModel *model, struct QhModelDims *out);

/**
 * Runs one suite (`"relations"`, `"theorem0"`, `"section3"`, `"theorem1"` or `"hochschild"`).
 * `trials = 0` selects the suite default.
 *
 * # Safety
 * `model` must be a live handle, `suite` a NUL-terminated string and `out` writable.
 */
enum QhStatus qh_model_verify(const struct QhModel *model,
                              const char *suite,
                              uint32_t trials,
                              uint64_t seed,
                              struct QhReport **out);

/**
 * # Safety
 * `report` must be a live handle.
 */
bool qh_report_passed(const struct QhReport *report);

/**
 * JSON text of the report, owned by the handle.
 *
 * # Safety
 * `report` must be a live handle; the pointer is invalid after [`qh_report_free`].
 */
const char *qh_report_json(const struct QhReport *report);

/**
 * # Safety
 * `report` must be NULL or a live handle.
 */
void qh_report_free(struct QhReport *report);

/**
 * Parses a matrix from the JSON matrix-file format.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` writable.
 */
enum QhStatus qh_matrix_from_json(const char *json, struct QhMatrix **out);

/**
 * # Safety
 * `matrix` must be NULL or a live handle.
 */
void qh_matrix_free(struct QhMatrix *matrix);

/**
 * Writes `dim H_(k)` for `k = 1..h-1` into `dims`; `written` receives `h - 1`. Fails with
 * `QH_STATUS_NOT_NILPOTENT` unless `matrix^h = 0`, and with `QH_STATUS_BUFFER_TOO_SMALL` (still
 * setting `written`) when `capacity < h - 1`.
 *
 * # Safety
 * `matrix` must be a live handle, `dims` valid for `capacity` writes and `written` writable.
 */
enum QhStatus qh_homology_dims(const struct QhMatrix *matrix,
                               uint32_t h,
                               uintptr_t *dims,
                               uintptr_t capacity,
                               uintptr_t *written);

/**
 * Whether a nilpotent operator with `Q^h = 0` on a space of dimension `dim` can have every
 * generalized homology one-dimensional.
 *
 * # Safety
 * `feasible` must be writable.
 */
enum QhStatus qh_feasibility(uintptr_t dim, uint32_t h, bool *feasible);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QHOMOLOGY_H */
