#ifndef STARDIAG_H
#define STARDIAG_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// PMC model selector.
#define SD_MODEL_PMC 0

// MM* model selector.
#define SD_MODEL_MM 1

typedef enum SdStatus {
  SD_STATUS_OK = 0,
  SD_STATUS_NULL_POINTER = 1,
  SD_STATUS_INVALID_ARGUMENT = 2,
  // Parameters outside the range where the quantity is defined or known.
  SD_STATUS_NOT_APPLICABLE = 3,
  // The graph is larger than the exhaustive search accepts.
  SD_STATUS_BUDGET_EXCEEDED = 4,
  SD_STATUS_VERIFICATION_FAILED = 5,
  SD_STATUS_INTERNAL = 6,
  SD_STATUS_PANIC = 7,
} SdStatus;

// Opaque graph handle.
typedef struct SdGraph SdGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null. Valid until the
// next call into the library on the same thread.
const char *sd_last_error(void);

// Builds a graph from a descriptor such as `"nkstar:4,2"`.
//
// # Safety
// `descriptor` must be a NUL-terminated string and `out` writable.
enum SdStatus sd_graph_new(const char *descriptor, struct SdGraph **out);

// # Safety
// `graph` must be null or a handle from `sd_graph_new` not yet freed.
void sd_graph_free(struct SdGraph *graph);

// # Safety
// `graph` must be a live handle; null yields 0.
size_t sd_graph_vertex_count(const struct SdGraph *graph);

// # Safety
// `graph` must be a live handle; null yields 0.
size_t sd_graph_edge_count(const struct SdGraph *graph);

// Closed-form t_g of S_{n,k}.
//
// # Safety
// `out` must be writable.
enum SdStatus sd_tg_formula(size_t n, size_t k, size_t g, uint32_t model_sel, uint64_t *out);

// t_g by exhaustive search under the default budgets.
//
// # Safety
// `graph` must be a live handle and `out` writable.
enum SdStatus sd_tg_bruteforce(const struct SdGraph *graph_h,
                               size_t g,
                               uint32_t model_sel,
                               uint64_t *out);

// Closed-form R_g-connectivity of S_{n,k}.
//
// # Safety
// `out` must be writable.
enum SdStatus sd_kappa_formula(size_t n, size_t k, size_t g, uint64_t *out);

// R_g-connectivity by subset scan. `SD_STATUS_NOT_APPLICABLE` when no
// g-good-neighbor cut exists.
//
// # Safety
// `graph` must be a live handle and `out` writable.
enum SdStatus sd_kappa_bruteforce(const struct SdGraph *graph_h, size_t g, uint64_t *out);

// Whether the labelled set is a g-good-neighbor faulty set.
//
// # Safety
// `graph` must be a live handle, `labels` NUL-terminated and `out` writable.
enum SdStatus sd_is_g_good_neighbor(const struct SdGraph *graph_h,
                                    const char *labels,
                                    size_t g,
                                    bool *out);

// Whether two labelled faulty sets are distinguishable under the model.
//
// # Safety
// `graph` must be a live handle, both label lists NUL-terminated and `out` writable.
enum SdStatus sd_distinguishable(const struct SdGraph *graph_h,
                                 uint32_t model_sel,
                                 const char *f1,
                                 const char *f2,
                                 bool *out);

// JSON array of the verified witness pairs covering `(n, k, g)`; `[]` when
// none applies. Free the result with `sd_string_free`.
//
// # Safety
// `out` must be writable.
enum SdStatus sd_witness_json(size_t n, size_t k, size_t g, char **out);

// # Safety
// `s` must be null or a string returned by this library, not yet freed.
void sd_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* STARDIAG_H */
