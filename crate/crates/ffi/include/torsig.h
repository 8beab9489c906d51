#ifndef TORSIG_H
#define TORSIG_H

#include <stddef.h>
#include <stdint.h>

// Result of every fallible call.
typedef enum TorsigStatus {
  TORSIG_STATUS_OK = 0,
  TORSIG_STATUS_NULL_POINTER = 1,
  TORSIG_STATUS_NOT_COPRIME = 2,
  TORSIG_STATUS_INVALID_PARAMETER = 3,
  TORSIG_STATUS_OUT_OF_RANGE = 4,
  TORSIG_STATUS_PARSE = 5,
  TORSIG_STATUS_NEAR_SINGULAR = 6,
  TORSIG_STATUS_VALIDATION = 7,
  TORSIG_STATUS_INTERNAL = 8,
  TORSIG_STATUS_BUFFER_TOO_SMALL = 9,
  TORSIG_STATUS_PANIC = 10,
} TorsigStatus;

// Opaque torus knot handle.
typedef struct TorsigKnot TorsigKnot;

// Opaque handle to the signature function of one knot.
typedef struct TorsigStepFunction TorsigStepFunction;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static nul-terminated string.
const char *torsig_version(void);

// Message for the most recent failed call on this thread, or "" after a
// successful one. Valid until the next call into the library on this thread.
const char *torsig_last_error(void);

// Creates T(p,q). The order of `p` and `q` does not matter.
//
// # Safety
// `out` must be null or valid for writes.
enum TorsigStatus torsig_knot_new(int64_t p, int64_t q, struct TorsigKnot **out);

// # Safety
// `knot` must be null or a handle from [`torsig_knot_new`] not yet freed.
void torsig_knot_free(struct TorsigKnot *knot);

// The smaller parameter, or 0 for a null handle.
//
// # Safety
// `knot` must be null or a live handle.
uint32_t torsig_knot_p(const struct TorsigKnot *knot);

// The larger parameter, or 0 for a null handle.
//
// # Safety
// `knot` must be null or a live handle.
uint32_t torsig_knot_q(const struct TorsigKnot *knot);

// sigma_t at `t = num/den`, which must lie strictly between 0 and 1.
//
// # Safety
// `knot` must be a live handle and `out` valid for writes.
enum TorsigStatus torsig_lt_signature(const struct TorsigKnot *knot,
                                      int64_t num,
                                      int64_t den,
                                      int64_t *out);

// sigma_t at an angle given as the exact string "n/d", for numerators and
// denominators beyond 64 bits.
//
// # Safety
// `knot` must be a live handle, `t` a nul-terminated string and `out` valid
// for writes.
enum TorsigStatus torsig_lt_signature_str(const struct TorsigKnot *knot,
                                          const char *t,
                                          int64_t *out);

// Classical signature sigma_{1/2}.
//
// # Safety
// `knot` must be a live handle and `out` valid for writes.
enum TorsigStatus torsig_classical_signature(const struct TorsigKnot *knot, int64_t *out);

// Maximum of sigma_t over the circle.
//
// # Safety
// `knot` must be a live handle and `out` valid for writes.
enum TorsigStatus torsig_max_signature(const struct TorsigKnot *knot, int64_t *out);

// Maximal cyclic partial sum M of the balanced sequence.
//
// # Safety
// `knot` must be a live handle and `out` valid for writes.
enum TorsigStatus torsig_max_cyclic_sum(const struct TorsigKnot *knot, int64_t *out);

// Lower bound ceil(sigma_hat / 2) on the topological 4-genus.
//
// # Safety
// `knot` must be a live handle and `out` valid for writes.
enum TorsigStatus torsig_g4_lower_bound(const struct TorsigKnot *knot, int64_t *out);

// Copies the balanced sequence (entries +1 and -1) into `buf`.
//
// `len` always receives the sequence length. If `cap` is smaller, nothing
// is copied and the call returns `BUFFER_TOO_SMALL`; `buf` may be null when
// `cap` is 0.
//
// # Safety
// `knot` must be a live handle, `len` valid for writes and `buf` valid for
// `cap` writes.
enum TorsigStatus torsig_balanced_sequence(const struct TorsigKnot *knot,
                                           int8_t *buf,
                                           size_t cap,
                                           size_t *len);

// Computes the full signature function of `knot`.
//
// # Safety
// `knot` must be a live handle and `out` valid for writes.
enum TorsigStatus torsig_step_function_new(const struct TorsigKnot *knot,
                                           struct TorsigStepFunction **out);

// # Safety
// `sf` must be null or a handle from [`torsig_step_function_new`] not yet freed.
void torsig_step_function_free(struct TorsigStepFunction *sf);

// Number of jumps. There is one more open interval than jumps.
//
// # Safety
// `sf` must be null or a live handle.
size_t torsig_step_function_len(const struct TorsigStepFunction *sf);

// The jump abscissa `num/den` (lowest terms) at position `index`, and the
// value there.
//
// # Safety
// `sf` must be a live handle; `num`, `den` and `value` valid for writes.
enum TorsigStatus torsig_step_function_breakpoint(const struct TorsigStepFunction *sf,
                                                  size_t index,
                                                  uint64_t *num,
                                                  uint64_t *den,
                                                  int64_t *value);

// Value on the open interval just before breakpoint `index`; `index == len`
// is the last interval, ending at 1.
//
// # Safety
// `sf` must be a live handle and `value` valid for writes.
enum TorsigStatus torsig_step_function_interval_value(const struct TorsigStepFunction *sf,
                                                      size_t index,
                                                      int64_t *value);

// Maximum over all intervals and breakpoints.
//
// # Safety
// `sf` must be a live handle and `value` valid for writes.
enum TorsigStatus torsig_step_function_max(const struct TorsigStepFunction *sf, int64_t *value);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TORSIG_H */
