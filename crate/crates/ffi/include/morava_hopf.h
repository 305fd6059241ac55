#ifndef MORAVA_HOPF_H
#define MORAVA_HOPF_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define MH_THEORY_CHOW 0

#define MH_THEORY_CONNECTIVE 1

#define MH_THEORY_PERIODIC 2

#define MH_SUITE_HOPF 0

#define MH_SUITE_DUALITY 1

#define MH_SUITE_BIIDEALS 2

typedef enum MhStatus {
  MH_STATUS_OK = 0,
  MH_STATUS_VERIFICATION_FAILED = 1,
  MH_STATUS_INVALID_INPUT = 2,
  MH_STATUS_SIZING_REFUSAL = 3,
  MH_STATUS_UNSUPPORTED = 4,
  MH_STATUS_NULL_POINTER = 5,
  MH_STATUS_PANIC = 6,
} MhStatus;

/**
 * A presentation of `A*(SO_m)`, possibly a quotient.
 */
typedef struct MhPresentation MhPresentation;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The message of the last failure on this thread. Valid until the next
 * call into the library from the same thread.
 */
const char *mh_last_error(void);

/**
 * Builds the presentation of the theory (one of `MH_THEORY_*`) at height
 * `n` (ignored for Chow) on `SO_m`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum MhStatus mh_presentation_new(uint32_t theory,
                                  uint32_t n,
                                  uint32_t m,
                                  struct MhPresentation **out);

/**
 * The quotient by the ideal `(e_1^{2^{a_1}}, e_3^{2^{a_2}}, ...)`.
 *
 * # Safety
 * `p` must be a live handle, `a` must point to `len` integers and `out`
 * must be valid for writes.
 */
enum MhStatus mh_presentation_quotient(const struct MhPresentation *p,
                                       const uint32_t *a,
                                       size_t len,
                                       struct MhPresentation **out);

/**
 * # Safety
 * `p` must be null or a handle not yet freed.
 */
void mh_presentation_free(struct MhPresentation *p);

/**
 * Number of basis monomials.
 *
 * # Safety
 * `p` must be a live handle and `out` valid for writes.
 */
enum MhStatus mh_presentation_rank(const struct MhPresentation *p, uint64_t *out);

/**
 * A label such as `K(2)*(SO_7)`.
 *
 * # Safety
 * `p` must be a live handle and `out` valid for writes.
 */
enum MhStatus mh_presentation_label(const struct MhPresentation *p, char **out);

/**
 * The presentation as JSON.
 *
 * # Safety
 * `p` must be a live handle and `out` valid for writes.
 */
enum MhStatus mh_presentation_json(const struct MhPresentation *p, char **out);

/**
 * The reduced coproduct of `e_index` in the text grammar, e.g.
 * `v^1*e3 (x) e3`.
 *
 * # Safety
 * `p` must be a live handle and `out` valid for writes.
 */
enum MhStatus mh_reduced_comul(const struct MhPresentation *p, uint32_t index, char **out);

/**
 * Runs a verification suite (`MH_SUITE_*`). Returns `MH_STATUS_OK` when it
 * passes and `MH_STATUS_VERIFICATION_FAILED` otherwise; the JSON report is
 * written to `report` when it is not null.
 *
 * # Safety
 * `p` must be a live handle; `report` must be null or valid for writes.
 */
enum MhStatus mh_verify(const struct MhPresentation *p, uint32_t suite, char **report);

/**
 * The idempotents of the dual of `K(n)*(SO_m)`, as a JSON array of strings,
 * and their number.
 *
 * # Safety
 * `count` and `json` must each be null or valid for writes.
 */
enum MhStatus mh_idempotents(uint32_t n, uint32_t m, size_t *count, char **json);

/**
 * The J-invariant document for the killed indices `j[0..len]`, as JSON.
 *
 * # Safety
 * `j` must point to `len` integers unless `len` is 0; `out` must be valid
 * for writes.
 */
enum MhStatus mh_jinv(uint32_t n, uint32_t m, const uint32_t *j, size_t len, char **out);

/**
 * Releases a string returned by the library.
 *
 * # Safety
 * `s` must be null or a string from this library not yet freed.
 */
void mh_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MORAVA_HOPF_H */
