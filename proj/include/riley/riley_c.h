/* SPDX-License-Identifier: Apache-2.0 */

/* C interface to the Riley polynomial library. All handles are opaque.
 * Functions return a riley_status; on failure the context keeps a message
 * retrievable with riley_last_error. Strings handed out through char** must
 * be released with riley_string_free. A context is not safe for concurrent
 * use; separate contexts are independent. */

#ifndef RILEY_RILEY_C_H
#define RILEY_RILEY_C_H

#include <stddef.h>

#if defined(_WIN32)
#if defined(RILEY_BUILDING_LIBRARY)
#define RILEY_API __declspec(dllexport)
#else
#define RILEY_API __declspec(dllimport)
#endif
#else
#define RILEY_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum riley_status {
  RILEY_OK = 0,
  RILEY_E_INVALID_ARGUMENT = 1,
  RILEY_E_PARSE = 2,
  RILEY_E_IO = 3,
  RILEY_E_NOT_TWO_BRIDGE = 4,
  RILEY_E_NOT_A_KNOT = 5,
  RILEY_E_DEGENERATE_ENTRY = 6,
  RILEY_E_ZERO_T = 7,
  RILEY_E_NON_POSITIVE_ARGUMENT = 8,
  RILEY_E_ZERO_B = 9,
  RILEY_E_EVEN_SLOPE_COMPONENT = 10,
  RILEY_E_NO_REAL_SEED = 11,
  RILEY_E_GUARD_DEGENERATE = 12,
  RILEY_E_CORRECTOR_DIVERGED = 13,
  RILEY_E_OUT_OF_RANGE = 14,
  RILEY_E_INADMISSIBLE = 15,
  RILEY_E_RECHECK_FAILED = 16,
  RILEY_E_TORUS_KNOT = 17,
  RILEY_E_EVEN_D = 18,
  RILEY_E_SELFTEST_FAILED = 98,
  RILEY_E_INTERNAL = 99
} riley_status;

typedef struct riley_context riley_context;
typedef struct riley_knot riley_knot;

/* Stable name such as "OutOfRange"; "Ok" for RILEY_OK. */
RILEY_API const char* riley_status_name(riley_status status);
/* 1 for numerical failures (convergence, recheck, self-test), 0 otherwise. */
RILEY_API int riley_status_is_numerical(riley_status status);

RILEY_API riley_status riley_context_create(riley_context** out);
RILEY_API void riley_context_destroy(riley_context* ctx);
/* Working precision in decimal digits, at least 30. Resets tolerances to
 * 10^(-0.6 digits) for emission and its square for the recheck. */
RILEY_API riley_status riley_context_set_digits(riley_context* ctx, unsigned digits);
/* Emission tolerance; the doubled-precision recheck uses tol^2. */
RILEY_API riley_status riley_context_set_tolerance(riley_context* ctx, double tol);
/* Directory for cached Riley systems; NULL or "" disables the cache. */
RILEY_API riley_status riley_context_set_cache_dir(riley_context* ctx, const char* dir);
/* Message of the most recent failure on this context, "" if none. */
RILEY_API const char* riley_last_error(const riley_context* ctx);

RILEY_API riley_status riley_knot_from_pq(riley_context* ctx, long p, long q, riley_knot** out);
RILEY_API riley_status riley_knot_from_cf(riley_context* ctx, const long* entries, size_t n,
                                          riley_knot** out);
/* C(k, m); *ambiguous (may be NULL) is set for the figure-eight inputs C(2, +-2). */
RILEY_API riley_status riley_knot_from_double_twist(riley_context* ctx, long k, long m,
                                                    riley_knot** out, int* ambiguous);
RILEY_API void riley_knot_pq(const riley_knot* knot, long* p, long* q);
RILEY_API void riley_knot_destroy(riley_knot* knot);

/* Canonical serialization of P. *cache_hit (may be NULL) reports whether
 * the system came from the cache directory. */
RILEY_API riley_status riley_poly_text(riley_context* ctx, riley_knot* knot, char** out,
                                       int* cache_hit);
/* Slope n(t, u) as a decimal string at the working precision. */
RILEY_API riley_status riley_slope_of_point(riley_context* ctx, riley_knot* knot, const char* t,
                                            const char* u, char** out);
/* Branch CSV. branch: "psi", "phi" (banded strips through the u = 0 seed) or
 * "t+", "t-", "u+", "u-" (parameter and direction, no band). */
RILEY_API riley_status riley_trace_csv(riley_context* ctx, riley_knot* knot, const char* branch,
                                       char** out);
/* Slope certificate JSON for a rational slope such as "-7/2" or "7.9". */
RILEY_API riley_status riley_certify_slope(riley_context* ctx, riley_knot* knot,
                                           const char* slope, char** out);
RILEY_API riley_status riley_interval_report(riley_context* ctx, riley_knot* knot,
                                             const char* const* samples, size_t n, char** out);
/* Transfer certificate JSON for a Wang family; lo and hi are rationals. */
RILEY_API riley_status riley_transfer(riley_context* ctx, const long* base, size_t n_base,
                                      const long* c, size_t n_c, const int* eps, size_t n_eps,
                                      const char* lo, const char* hi, char** out);
RILEY_API riley_status riley_transfer_d(riley_context* ctx, int d, const char* lo,
                                        const char* hi, char** out);
/* Exact identity suite for every knot with p <= max_p; JSON summary in *out.
 * Returns RILEY_E_SELFTEST_FAILED when any identity fails. */
RILEY_API riley_status riley_selftest(riley_context* ctx, long max_p, char** out);
/* Revalidates certificate JSON from its stored point; JSON summary in *out. */
RILEY_API riley_status riley_verify_certificate(riley_context* ctx, const char* json, char** out);

RILEY_API void riley_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* RILEY_RILEY_C_H */
