#ifndef ORDSLOPE_H
#define ORDSLOPE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum OrdslopeFamily {
  // `C(2m,-2n)`
  ORDSLOPE_FAMILY_EVEN_MINUS = 0,
  // `C(2m+1,2n)`
  ORDSLOPE_FAMILY_ODD_PLUS = 1,
  // `C(2m+1,-2n)`
  ORDSLOPE_FAMILY_ODD_MINUS = 2,
} OrdslopeFamily;

typedef enum OrdslopeStatus {
  ORDSLOPE_STATUS_OK = 0,
  ORDSLOPE_STATUS_NULL_POINTER = 1,
  ORDSLOPE_STATUS_INVALID_INPUT = 2,
  ORDSLOPE_STATUS_DOMAIN = 3,
  ORDSLOPE_STATUS_UNSUPPORTED_FAMILY = 4,
  ORDSLOPE_STATUS_SLOPE_NOT_COVERED = 5,
  ORDSLOPE_STATUS_ZERO_SLOPE = 6,
  ORDSLOPE_STATUS_SEARCH_FAILURE = 7,
  ORDSLOPE_STATUS_NOT_FOUND = 8,
  ORDSLOPE_STATUS_SINGULARITY = 9,
  ORDSLOPE_STATUS_VERIFICATION_FAILED = 10,
  ORDSLOPE_STATUS_INTERNAL = 11,
  ORDSLOPE_STATUS_PANIC = 12,
} OrdslopeStatus;

// A solved surgery certificate.
typedef struct OrdslopeCertificate OrdslopeCertificate;

// A knot in one of the supported families.
typedef struct OrdslopeKnot OrdslopeKnot;

typedef struct OrdslopeCertificateValues {
  int64_t r_p;
  int64_t r_q;
  double theta;
  double y;
  double phi;
  double l_re;
  double l_im;
  bool elliptic;
  bool reality;
} OrdslopeCertificateValues;

typedef struct OrdslopeResiduals {
  double slope;
  double relation;
  double longitude_match;
  double peripheral_kill;
  double eigenvalue_kill;
  double riley;
} OrdslopeResiduals;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static NUL-terminated string.
const char *ordslope_version(void);

// Message for the last failed call on this thread; empty after a success.
const char *ordslope_last_error(void);

// Parses Conway notation such as `"C(5,-4)"`.
//
// # Safety
// `text` must be a valid NUL-terminated string and `out` writable.
enum OrdslopeStatus ordslope_knot_parse(const char *text, struct OrdslopeKnot **out);

// # Safety
// `out` must be writable.
enum OrdslopeStatus ordslope_knot_new(enum OrdslopeFamily family,
                                      uint32_t m,
                                      uint32_t n,
                                      struct OrdslopeKnot **out);

// # Safety
// `knot` must come from this library and not be used afterwards. Null is ignored.
void ordslope_knot_free(struct OrdslopeKnot *knot);

// Family and parameters of a knot. Any out-pointer may be null.
//
// # Safety
// `knot` must be a live handle.
enum OrdslopeStatus ordslope_knot_info(const struct OrdslopeKnot *knot,
                                       enum OrdslopeFamily *family,
                                       uint32_t *m,
                                       uint32_t *n);

// `R(x, y)` for the knot's family.
//
// # Safety
// `knot` must be a live handle and `out` writable.
enum OrdslopeStatus ordslope_riley_eval(const struct OrdslopeKnot *knot,
                                        double x,
                                        double y,
                                        double *out);

// `y(x)` on the `C(2m,-2n)` curve, `x` in `[4 - 1/(mn), 4]`.
//
// # Safety
// `out` must be writable.
enum OrdslopeStatus ordslope_solve_y_of_x(uint32_t m, uint32_t n, double x, double *out);

// `x(y)` on the slope branch of an odd-family knot.
//
// # Safety
// `knot` must be a live handle and `out` writable.
enum OrdslopeStatus ordslope_solve_x_of_y(const struct OrdslopeKnot *knot, double y, double *out);

// The `y* > 2` with `x(y*) = 4` for an odd-family knot.
//
// # Safety
// `knot` must be a live handle and `out` writable.
enum OrdslopeStatus ordslope_find_y_star(const struct OrdslopeKnot *knot, double *out);

// Solves for a representation killing `p/q` with default tolerances.
//
// The certificate is returned even when it fails verification; check with
// `ordslope_certificate_verify`.
//
// # Safety
// `knot` must be a live handle and `out` writable.
enum OrdslopeStatus ordslope_certify(const struct OrdslopeKnot *knot,
                                     int64_t p,
                                     int64_t q,
                                     struct OrdslopeCertificate **out);

// # Safety
// `cert` must come from this library and not be used afterwards. Null is ignored.
void ordslope_certificate_free(struct OrdslopeCertificate *cert);

// # Safety
// `cert` must be a live handle and `out` writable.
enum OrdslopeStatus ordslope_certificate_values(const struct OrdslopeCertificate *cert,
                                                struct OrdslopeCertificateValues *out);

// Residuals as stored in the certificate.
//
// # Safety
// `cert` must be a live handle and `out` writable.
enum OrdslopeStatus ordslope_certificate_residuals(const struct OrdslopeCertificate *cert,
                                                   struct OrdslopeResiduals *out);

// Recomputes every residual from the certificate's own values.
//
// Returns `ORDSLOPE_STATUS_VERIFICATION_FAILED` naming the failed checks.
//
// # Safety
// `cert` must be a live handle.
enum OrdslopeStatus ordslope_certificate_verify(const struct OrdslopeCertificate *cert);

// Serializes to JSON; release the string with `ordslope_string_free`.
//
// # Safety
// `cert` must be a live handle and `out` writable.
enum OrdslopeStatus ordslope_certificate_to_json(const struct OrdslopeCertificate *cert,
                                                 char **out);

// Parses certificate JSON. The result is not verified.
//
// # Safety
// `text` must be a valid NUL-terminated string and `out` writable.
enum OrdslopeStatus ordslope_certificate_from_json(const char *text,
                                                   struct OrdslopeCertificate **out);

// # Safety
// `s` must come from this library and not be used afterwards. Null is ignored.
void ordslope_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ORDSLOPE_H */
