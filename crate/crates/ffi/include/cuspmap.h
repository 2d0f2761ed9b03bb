#ifndef CUSPMAP_H
#define CUSPMAP_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result of every fallible call.
typedef enum CuspmapStatus {
  CUSPMAP_STATUS_OK = 0,
  CUSPMAP_STATUS_NULL_POINTER = 1,
  CUSPMAP_STATUS_INVALID_ARGUMENT = 2,
  CUSPMAP_STATUS_PARSE = 3,
  // A series operation failed (zero series, wrong order, short truncation).
  CUSPMAP_STATUS_SERIES = 4,
  // The arcs do not describe an admissible cusp.
  CUSPMAP_STATUS_DOMAIN = 5,
  CUSPMAP_STATUS_BRANCH_CUT = 6,
  CUSPMAP_STATUS_OUT_OF_RANGE = 7,
  CUSPMAP_STATUS_QUADRATURE = 8,
  CUSPMAP_STATUS_ZIPPER = 9,
  CUSPMAP_STATUS_BUFFER_TOO_SMALL = 10,
  CUSPMAP_STATUS_PANIC = 11,
} CuspmapStatus;

// Which asymptotic expression [`cuspmap_eval`] computes.
typedef enum CuspmapQuantity {
  // The mapping function, or its `k`-th derivative.
  CUSPMAP_QUANTITY_F = 0,
  // Logarithm of the mapping function or of its `k`-th derivative; finite
  // where the value itself underflows.
  CUSPMAP_QUANTITY_LOG_F = 1,
  // The inverse map on the upper half-plane, or its `k`-th derivative.
  CUSPMAP_QUANTITY_G = 2,
} CuspmapQuantity;

// A normalized cusp domain with its asymptotic tuple.
typedef struct CuspmapDomain CuspmapDomain;

// A reference map of a domain onto the upper half-plane.
typedef struct CuspmapOracle CuspmapOracle;

// Scalar part of the asymptotic tuple. The coefficient lists are read with
// [`cuspmap_domain_c`] and [`cuspmap_domain_b`].
typedef struct CuspmapTupleInfo {
  // Order of tangency `N`.
  size_t order;
  // Coefficient of tangency `a`.
  double coefficient;
  double sigma;
  // Length of the `c` list (always `N`).
  size_t c_len;
  // Length of the `b` list.
  size_t b_len;
  // 1 or 0, or -1 when the truncation is too short to decide.
  int32_t small_perturbation;
  // Radius `R` of the normalized cusp.
  double radius;
} CuspmapTupleInfo;

typedef struct CuspmapComplex {
  double re;
  double im;
} CuspmapComplex;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Copies the message of the last failed call on this thread into `buf`
// (NUL-terminated, truncated to `cap`) and returns the size needed to hold
// it in full, NUL included. `buf` may be null to query the size.
//
// # Safety
// `buf` must be null or valid for `cap` bytes.
size_t cuspmap_last_error(char *buf, size_t cap);

// Library version as a static NUL-terminated string.
const char *cuspmap_version(void);

// Builds a domain from its JSON description, storing `trunc` angle-function
// coefficients.
//
// # Safety
// `json` must be a NUL-terminated string and `out` valid for a write.
enum CuspmapStatus cuspmap_domain_from_json(const char *json,
                                            size_t trunc,
                                            struct CuspmapDomain **out);

// Builds a preset domain: `example_2_6`, `tangent_circles[:r]` or
// `tangent_circles_sqrt[:r]`.
//
// # Safety
// `name` must be a NUL-terminated string and `out` valid for a write.
enum CuspmapStatus cuspmap_domain_from_preset(const char *name,
                                              size_t trunc,
                                              struct CuspmapDomain **out);

// Releases a domain. Null is ignored.
//
// # Safety
// `domain` must be null or come from a `cuspmap_domain_from_*` call and not
// have been freed.
void cuspmap_domain_free(struct CuspmapDomain *domain);

// # Safety
// `domain` must be a live handle and `out` valid for a write.
enum CuspmapStatus cuspmap_domain_tuple(const struct CuspmapDomain *domain,
                                        struct CuspmapTupleInfo *out);

// Copies `c_0..c_{N-1}` into `buf`. `*len` always receives the list length,
// so a call with `cap = 0` sizes the buffer.
//
// # Safety
// `buf` must be valid for `cap` doubles and `len` for a write.
enum CuspmapStatus cuspmap_domain_c(const struct CuspmapDomain *domain,
                                    double *buf,
                                    size_t cap,
                                    size_t *len);

// Copies the Laurent coefficients `b_0, b_1, …` of the reciprocal angle
// function, with the same sizing protocol as [`cuspmap_domain_c`].
//
// # Safety
// `buf` must be valid for `cap` doubles and `len` for a write.
enum CuspmapStatus cuspmap_domain_b(const struct CuspmapDomain *domain,
                                    double *buf,
                                    size_t cap,
                                    size_t *len);

// The point `t·e^{iθ∢(t)}` of the domain, `θ ∈ [0, 1]`.
//
// # Safety
// `domain` must be a live handle and `out` valid for a write.
enum CuspmapStatus cuspmap_domain_ray_point(const struct CuspmapDomain *domain,
                                            double t,
                                            double theta,
                                            struct CuspmapComplex *out);

// Evaluates `quantity` (its `k`-th derivative when `k > 0`) at `z`.
//
// # Safety
// `domain` must be a live handle and `out` valid for a write.
enum CuspmapStatus cuspmap_eval(const struct CuspmapDomain *domain,
                                enum CuspmapQuantity quantity,
                                size_t k,
                                struct CuspmapComplex z,
                                struct CuspmapComplex *out);

// Asymptotic modulus of the mapping function on `|z| = r`.
//
// # Safety
// `domain` must be a live handle and `out` valid for a write.
enum CuspmapStatus cuspmap_modulus_asymptote(const struct CuspmapDomain *domain,
                                             double r,
                                             double *out);

// Asymptotic argument of the mapping function at `z`.
//
// # Safety
// `domain` must be a live handle and `out` valid for a write.
enum CuspmapStatus cuspmap_argument_asymptote(const struct CuspmapDomain *domain,
                                              struct CuspmapComplex z,
                                              double *out);

// `h(r) = -π ∫_r^δ dρ / (ρ∢(ρ))` integrated term by term from the tuple.
//
// # Safety
// `domain` must be a live handle and `out` valid for a write.
enum CuspmapStatus cuspmap_h_closed_form(const struct CuspmapDomain *domain,
                                         double r,
                                         double delta,
                                         double *out);

// The same integral by adaptive quadrature of the angle function.
//
// # Safety
// `domain` must be a live handle and `out` valid for a write.
enum CuspmapStatus cuspmap_h_quadrature(const struct CuspmapDomain *domain,
                                        double r,
                                        double delta,
                                        double *out);

// Closed-form reference map of a preset domain. Fails with
// `INVALID_ARGUMENT` for domains without one.
//
// # Safety
// `domain` must be a live handle and `out` valid for a write.
enum CuspmapStatus cuspmap_oracle_catalog(const struct CuspmapDomain *domain,
                                          struct CuspmapOracle **out);

// Numerical reference map from `nodes` boundary points per arc graded toward
// the tip by `clustering ∈ ]0, 1[`. The base vertex goes to ∞.
//
// # Safety
// `domain` must be a live handle and `out` valid for a write.
enum CuspmapStatus cuspmap_oracle_zipper(const struct CuspmapDomain *domain,
                                         size_t nodes,
                                         double clustering,
                                         struct CuspmapOracle **out);

// Releases a reference map. Null is ignored.
//
// # Safety
// `oracle` must be null or come from a `cuspmap_oracle_*` constructor and
// not have been freed.
void cuspmap_oracle_free(struct CuspmapOracle *oracle);

// Image of a domain point `z` in the upper half-plane.
//
// # Safety
// `oracle` must be a live handle and `out` valid for a write.
enum CuspmapStatus cuspmap_oracle_forward(const struct CuspmapOracle *oracle,
                                          struct CuspmapComplex z,
                                          struct CuspmapComplex *out);

// Preimage of a half-plane point `w` in the domain.
//
// # Safety
// `oracle` must be a live handle and `out` valid for a write.
enum CuspmapStatus cuspmap_oracle_inverse(const struct CuspmapOracle *oracle,
                                          struct CuspmapComplex w,
                                          struct CuspmapComplex *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CUSPMAP_H */
