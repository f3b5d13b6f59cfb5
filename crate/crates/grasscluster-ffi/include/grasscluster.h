#ifndef GRASSCLUSTER_H
#define GRASSCLUSTER_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes returned by every fallible function.
typedef enum GcStatus {
  GC_STATUS_OK = 0,
  GC_STATUS_NULL_POINTER = 1,
  GC_STATUS_DIMENSION = 2,
  GC_STATUS_INDEX = 3,
  GC_STATUS_PARAMETER = 4,
  GC_STATUS_INVARIANT = 5,
  GC_STATUS_RESOURCE = 6,
  GC_STATUS_BUFFER_TOO_SMALL = 7,
  GC_STATUS_OTHER = 8,
  GC_STATUS_PANIC = 9,
} GcStatus;

// Opaque result of a cyclic sieving check.
typedef struct GcCspReport GcCspReport;

// Opaque plane partition in an a×b box.
typedef struct GcPlanePartition GcPlanePartition;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failure on this thread, or null. Valid until the next failing call.
const char *gc_last_error(void);

// Builds a partition from `a*b` row-major entries.
//
// # Safety
// `entries` must point to `a*b` readable values and `out` must be writable.
enum GcStatus gc_pp_new(size_t a, size_t b, const uint32_t *entries, struct GcPlanePartition **out);

// Releases a partition. Null is ignored.
//
// # Safety
// `p` must be null or come from this library and not be used afterwards.
void gc_pp_free(struct GcPlanePartition *p);

// Box dimensions of a partition.
//
// # Safety
// Pointers must be valid.
enum GcStatus gc_pp_dims(const struct GcPlanePartition *p, size_t *a, size_t *b);

// Copies the row-major entries into `buf` of length `len` (at least a*b).
//
// # Safety
// `buf` must have room for `len` values.
enum GcStatus gc_pp_entries(const struct GcPlanePartition *p, uint32_t *buf, size_t len);

// Sum of the entries.
//
// # Safety
// Pointers must be valid.
enum GcStatus gc_pp_size(const struct GcPlanePartition *p, uint64_t *out);

// Toggles position (i, j), 1-indexed, inside the a×b×c box.
//
// # Safety
// Pointers must be valid.
enum GcStatus gc_pp_toggle(const struct GcPlanePartition *p,
                           size_t i,
                           size_t j,
                           uint32_t c,
                           struct GcPlanePartition **out);

// Applies η `power` times inside the a×b×c box.
//
// # Safety
// Pointers must be valid.
enum GcStatus gc_pp_eta(const struct GcPlanePartition *p,
                        uint32_t c,
                        size_t power,
                        struct GcPlanePartition **out);

// |P(a,b,c)|. Fails with `Resource` if it does not fit in 64 bits.
//
// # Safety
// `out` must be writable.
enum GcStatus gc_count_partitions(size_t a, size_t b, uint32_t c, uint64_t *out);

// Checks cyclic sieving for P(a,b,c). A `cap` of 0 selects the library default.
//
// # Safety
// `out` must be writable.
enum GcStatus gc_csp_verify(size_t a, size_t b, uint32_t c, uint64_t cap, struct GcCspReport **out);

// Releases a report. Null is ignored.
//
// # Safety
// `r` must be null or come from this library and not be used afterwards.
void gc_csp_free(struct GcCspReport *r);

// Whether every row of the report agrees.
//
// # Safety
// Pointers must be valid.
enum GcStatus gc_csp_all_equal(const struct GcCspReport *r, bool *out);

// Number of rows, which is a+b.
//
// # Safety
// Pointers must be valid.
enum GcStatus gc_csp_row_count(const struct GcCspReport *r, size_t *out);

// Row `d`: the η^d fixed-point count, M(ζ^d) when it is an integer in the i64 range, and agreement.
// `integral` is false when the value is not an integer or does not fit.
//
// # Safety
// Pointers must be valid.
enum GcStatus gc_csp_row(const struct GcCspReport *r,
                         size_t d,
                         uint64_t *fixed,
                         int64_t *value,
                         bool *integral,
                         bool *equal);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GRASSCLUSTER_H */
