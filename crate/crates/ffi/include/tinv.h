#ifndef TINV_H
#define TINV_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TinvStatus {
  TINV_STATUS_OK = 0,
  TINV_STATUS_INVALID_INPUT = 1,
  /**
   * Characteristic vector has the wrong parity.
   */
  TINV_STATUS_PARITY = 2,
  TINV_STATUS_SINGULAR_MATRIX = 3,
  /**
   * A result does not fit the C representation.
   */
  TINV_STATUS_OVERFLOW = 4,
  TINV_STATUS_NULL_POINTER = 5,
  /**
   * A library invariant was violated; this is a bug.
   */
  TINV_STATUS_INVARIANT_VIOLATION = 6,
  /**
   * The group is too large to enumerate.
   */
  TINV_STATUS_TOO_LARGE = 7,
  TINV_STATUS_PANIC = 8,
} TinvStatus;

typedef enum TinvMethod {
  TINV_METHOD_CLOSED = 0,
  TINV_METHOD_SERIES = 1,
  TINV_METHOD_TBAR = 2,
} TinvMethod;

typedef enum TinvVerdict {
  TINV_VERDICT_DIFFEOMORPHIC = 0,
  TINV_VERDICT_ALMOST_DIFFEOMORPHIC_ONLY = 1,
  TINV_VERDICT_DISTINCT = 2,
} TinvVerdict;

typedef enum TinvKsBit {
  TINV_KS_BIT_ZERO = 0,
  TINV_KS_BIT_ONE = 1,
  TINV_KS_BIT_INCONSISTENT = 2,
} TinvKsBit;

/**
 * Opaque coboundary data (intersection matrix and characteristic vector).
 */
typedef struct TinvCoboundary TinvCoboundary;

/**
 * Opaque quadratic linking function on a finite abelian group.
 */
typedef struct TinvQlf TinvQlf;

/**
 * An element `num/den` of Q/Z in canonical form.
 */
typedef struct TinvQz {
  int64_t num;
  int64_t den;
} TinvQz;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failing call on this thread, or null after a success.
 * The pointer stays valid until the next call into this library.
 */
const char *tinv_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *tinv_version(void);

/**
 * t-invariant of the pullback of `E_c` to `S^(4k-1)`, `k >= 2`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum TinvStatus tinv_t_pullback(int64_t c, int64_t k, enum TinvMethod method, struct TinvQz *out);

/**
 * Feder-Gitler test for `c` on `HP^k`. `failing_j` is 0 when admissible.
 *
 * # Safety
 * Both out pointers must be valid for writes.
 */
enum TinvStatus tinv_fg_check(int64_t c, int64_t k, bool *admissible, int64_t *failing_j);

/**
 * t, q and mu of the bundle with `c2 = k` over the sphere bundle `M_{n,p}`.
 *
 * # Safety
 * All out pointers must be valid for writes.
 */
enum TinvStatus tinv_sphere_bundle(int64_t n,
                                   int64_t p,
                                   int64_t k,
                                   struct TinvQz *t,
                                   struct TinvQz *q,
                                   struct TinvQz *mu);

/**
 * Difference between the GWZ formula at the `P_n` parameters and the `P_n` formula.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum TinvStatus tinv_gwz_pn_discrepancy(int64_t n, int64_t k, struct TinvQz *out);

/**
 * Builds coboundary data from a row-major `rank x rank` symmetric matrix and
 * a characteristic vector of length `rank`.
 *
 * # Safety
 * `lambda` must hold `rank * rank` values, `p` must hold `rank` values and
 * `out` must be valid for writes.
 */
enum TinvStatus tinv_coboundary_new(const int64_t *lambda,
                                    const int64_t *p,
                                    size_t rank,
                                    struct TinvCoboundary **out);

/**
 * # Safety
 * `h` must come from [`tinv_coboundary_new`] and not be used afterwards. Null is ignored.
 */
void tinv_coboundary_free(struct TinvCoboundary *h);

/**
 * q and t of the class represented by `x` (length = rank).
 *
 * # Safety
 * `h` must be a live handle, `x` must hold `len` values and the out pointers must be valid.
 */
enum TinvStatus tinv_coboundary_q_t(const struct TinvCoboundary *h,
                                    const int64_t *x,
                                    size_t len,
                                    struct TinvQz *q,
                                    struct TinvQz *t);

/**
 * The mu-invariant computed from the signature and characteristic vector.
 *
 * # Safety
 * `h` must be a live handle and `out` valid for writes.
 */
enum TinvStatus tinv_coboundary_mu(const struct TinvCoboundary *h, struct TinvQz *out);

/**
 * Invariant factors of `H^4`. Writes at most `cap` factors and always
 * stores the full count in `len`, so a first call with `cap = 0` sizes the buffer.
 *
 * # Safety
 * `factors` must have room for `cap` values; `h` and `len` must be valid.
 */
enum TinvStatus tinv_coboundary_group(const struct TinvCoboundary *h,
                                      int64_t *factors,
                                      size_t cap,
                                      size_t *len);

/**
 * Quadratic linking function of the coboundary on its torsion group.
 *
 * # Safety
 * `h` must be a live handle and `out` valid for writes.
 */
enum TinvStatus tinv_qlf_from_coboundary(const struct TinvCoboundary *h, struct TinvQlf **out);

/**
 * # Safety
 * `h` must come from [`tinv_qlf_from_coboundary`] and not be used afterwards. Null is ignored.
 */
void tinv_qlf_free(struct TinvQlf *h);

/**
 * Order of the group carrying the linking function.
 *
 * # Safety
 * `h` must be a live handle and `out` valid for writes.
 */
enum TinvStatus tinv_qlf_order(const struct TinvQlf *h, uint64_t *out);

/**
 * Whether the two linking functions are isomorphic.
 *
 * # Safety
 * Both handles must be live and `out` valid for writes.
 */
enum TinvStatus tinv_qlf_isomorphic(const struct TinvQlf *a, const struct TinvQlf *b, bool *out);

/**
 * Classifies two manifolds from their linking functions and mu-invariants.
 *
 * # Safety
 * Both handles must be live and `out` valid for writes.
 */
enum TinvStatus tinv_classify(const struct TinvQlf *a,
                              const struct TinvQlf *b,
                              struct TinvQz mu_a,
                              struct TinvQz mu_b,
                              enum TinvVerdict *out);

/**
 * Builds the untwisted t-table of `M_{n,p}` (n even), twists it by the pinch
 * map when `twisted` is set, and reports the detected Kirby-Siebenmann bit.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum TinvStatus tinv_exotic_ks(int64_t n, int64_t p, bool twisted, enum TinvKsBit *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TINV_H */
