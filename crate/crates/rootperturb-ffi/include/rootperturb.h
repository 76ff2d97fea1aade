#ifndef ROOTPERTURB_H
#define ROOTPERTURB_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every entry point.
 */
typedef enum RpStatus {
  RP_STATUS_OK = 0,
  RP_STATUS_NULL_ARGUMENT = 1,
  RP_STATUS_INVALID_UTF8 = 2,
  RP_STATUS_PARSE_ERROR = 3,
  RP_STATUS_ZERO_POLYNOMIAL = 4,
  RP_STATUS_DEGREE_ZERO = 5,
  RP_STATUS_NO_CONVERGENCE = 6,
  RP_STATUS_AMBIENT_MISMATCH = 7,
  RP_STATUS_INVALID_ARGUMENT = 8,
  RP_STATUS_BUFFER_TOO_SMALL = 9,
  RP_STATUS_NOT_A_ZERO = 10,
  RP_STATUS_OUTSIDE_CLOSURE = 11,
  RP_STATUS_INTERNAL_ERROR = 12,
} RpStatus;

/**
 * Opaque univariate polynomial handle.
 */
typedef struct RpPoly RpPoly;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Short static description of a status code.
 */
const char *rp_status_message(enum RpStatus status);

/**
 * Releases a string allocated by this library.
 *
 * # Safety
 * `s` must be a pointer previously returned through a `char **`
 * out-parameter of this library, not yet freed; null is ignored.
 */
void rp_string_free(char *s);

/**
 * Builds a polynomial from split real/imaginary coefficient arrays of
 * length `len` (ascending powers). The ambient degree is `len - 1`.
 *
 * # Safety
 * `re` and `im` must point to `len` readable doubles; `out` must be a valid
 * destination for one pointer.
 */
enum RpStatus rp_poly_new(const double *re, const double *im, size_t len, struct RpPoly **out);

/**
 * Parses the JSON wire format `{"n": .., "coeffs": [[re, im], ..]}`.
 *
 * # Safety
 * `json_text` must be a valid NUL-terminated string; `out` must be a valid
 * destination for one pointer.
 */
enum RpStatus rp_poly_from_json(const char *json_text, struct RpPoly **out);

/**
 * Serializes a polynomial handle back to the JSON wire format.
 *
 * # Safety
 * `p` must be a live handle; `out` must be a valid destination.
 */
enum RpStatus rp_poly_to_json(const struct RpPoly *p, char **out);

/**
 * Releases a polynomial handle; null is ignored.
 *
 * # Safety
 * `p` must have been returned by this library and not yet freed.
 */
void rp_poly_free(struct RpPoly *p);

/**
 * Ambient degree (coefficient count minus one).
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum RpStatus rp_poly_ambient_degree(const struct RpPoly *p, size_t *out);

/**
 * Formal degree: the largest index with a nonzero coefficient, or `-1` for
 * the zero polynomial (whose degree is undefined).
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum RpStatus rp_poly_formal_degree(const struct RpPoly *p, int64_t *out);

/**
 * Horner evaluation at `re + i im`.
 *
 * # Safety
 * `p` must be a live handle; `out_re` and `out_im` must be writable.
 */
enum RpStatus rp_poly_eval(const struct RpPoly *p,
                           double re,
                           double im,
                           double *out_re,
                           double *out_im);

/**
 * All `deg p` roots, counting multiplicities, plus scaled residuals.
 * `capacity` is the size of each output buffer; the root count is written
 * to `out_count` (also on `RP_STATUS_BUFFER_TOO_SMALL`, so callers can
 * resize and retry).
 *
 * # Safety
 * `p` must be a live handle; the three buffers must hold `capacity`
 * writable doubles each; `out_count` must be writable.
 */
enum RpStatus rp_roots(const struct RpPoly *p,
                       double tol,
                       double *roots_re,
                       double *roots_im,
                       double *residuals,
                       size_t capacity,
                       size_t *out_count);

/**
 * The constants `C`, `D` and `sum_ratio` from a coefficient sequence in the
 * descending positional convention (`b[0]` leading, nonzero), `len = n + 1`.
 *
 * # Safety
 * `re` and `im` must point to `len` readable doubles; the out-parameters
 * must be writable.
 */
enum RpStatus rp_cd_constants(const double *re,
                              const double *im,
                              size_t len,
                              double *out_c,
                              double *out_d,
                              double *out_sum_ratio);

/**
 * `(1/C) (2 max |zeta_i|)^(-n)` for an unperturbed polynomial handle;
 * writes `+inf` for a constant polynomial.
 *
 * # Safety
 * `q` must be a live handle; `out` must be writable.
 */
enum RpStatus rp_admissibility_threshold(const struct RpPoly *q, double *out);

/**
 * Full two-regime bound report for a perturbed/unperturbed JSON pair;
 * the report uses the same JSON schema as the CLI `bounds` command.
 *
 * # Safety
 * `p_json` and `q_json` must be valid NUL-terminated strings; `out_json`
 * must be a valid destination.
 */
enum RpStatus rp_two_regime_report_json(const char *p_json, const char *q_json, char **out_json);

/**
 * Root grouping report (same schema as the CLI `group` command).
 *
 * # Safety
 * String arguments must be valid NUL-terminated strings; `out_json` must be
 * a valid destination.
 */
enum RpStatus rp_group_json(const char *p_json,
                            const char *q_json,
                            double epsilon,
                            char **out_json);

/**
 * Empirical admissible-perturbation search (same schema as the CLI
 * `delta-search` command).
 *
 * # Safety
 * `q_json` must be a valid NUL-terminated string; `out_json` must be a
 * valid destination.
 */
enum RpStatus rp_delta_search_json(const char *q_json,
                                   double epsilon,
                                   uint32_t trials,
                                   uint64_t seed,
                                   char **out_json);

/**
 * Boundary-zero classification (same schema as the CLI `classify` command).
 * `alpha_json` is a JSON array of `[re, im]` pairs.
 *
 * # Safety
 * String arguments must be valid NUL-terminated strings; `out_json` must be
 * a valid destination.
 */
enum RpStatus rp_classify_json(const char *f_json,
                               const char *dom_json,
                               const char *alpha_json,
                               double tol,
                               char **out_json);

/**
 * Stability probe (same schema as the CLI `probe` command).
 *
 * # Safety
 * String arguments must be valid NUL-terminated strings; `out_json` must be
 * a valid destination.
 */
enum RpStatus rp_probe_json(const char *f_json,
                            const char *dom_json,
                            uint32_t samples,
                            uint64_t seed,
                            char **out_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ROOTPERTURB_H */
