#ifndef BINARION_H
#define BINARION_H

/* Generated by cbindgen from binarion-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum {
  BN_STATUS_OK = 0,
  /**
   * Null pointer, unknown kernel or sense, or an eps outside {-1,0,1}.
   */
  BN_STATUS_INVALID_ARGUMENT = 1,
  /**
   * A component was NaN or infinite.
   */
  BN_STATUS_NON_FINITE = 2,
  /**
   * Mixed signatures in a binary operation.
   */
  BN_STATUS_SIGNATURE_MISMATCH = 3,
  /**
   * Determinant within the singular tolerance of zero.
   */
  BN_STATUS_SINGULAR = 4,
  /**
   * Input outside an operation's mathematical domain.
   */
  BN_STATUS_DOMAIN = 5,
  /**
   * Expression text failed to lex or parse.
   */
  BN_STATUS_PARSE = 6,
  /**
   * Expression evaluated onto a singular or out-of-domain point.
   */
  BN_STATUS_EVAL = 7,
  /**
   * A JSON document failed validation.
   */
  BN_STATUS_MALFORMED = 8,
} BnStatus;

/**
 * Which first-order system a grid residual is measured against.
 */
typedef enum {
  BN_SENSE_SPLIT = 0,
  BN_SENSE_COMPLEX = 1,
} BnSense;

typedef struct BnContour BnContour;

typedef struct BnGrid BnGrid;

typedef struct BnSignal BnSignal;

/**
 * A plain-data element x I + y E with E^2 = eps I.
 */
typedef struct {
  double x;
  double y;
  int32_t eps;
} BnValue;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the most recent failure on this thread. Never null; empty
 * before the first failure. Valid until the next failing call.
 */
const char *bn_last_error(void);

/**
 * Builds a value, validating eps and finiteness.
 */
BnStatus bn_make(double x, double y, int32_t eps, BnValue *out);

BnStatus bn_add(BnValue a, BnValue b, BnValue *out);

BnStatus bn_sub(BnValue a, BnValue b, BnValue *out);

BnStatus bn_mul(BnValue a, BnValue b, BnValue *out);

BnStatus bn_div(BnValue a, BnValue b, BnValue *out);

BnStatus bn_conj(BnValue v, BnValue *out);

BnStatus bn_inv(BnValue v, BnValue *out);

BnStatus bn_exp(BnValue v, BnValue *out);

BnStatus bn_ln(BnValue v, BnValue *out);

BnStatus bn_sqrt(BnValue v, BnValue *out);

BnStatus bn_sin(BnValue v, BnValue *out);

BnStatus bn_cos(BnValue v, BnValue *out);

BnStatus bn_pow(BnValue v, uint32_t n, BnValue *out);

BnStatus bn_det(BnValue v, double *out);

BnStatus bn_trace(BnValue v, double *out);

/**
 * Evaluates an expression such as `"exp(ln(2I+1E))"` in the signature
 * `E^2 = eps I`.
 */
BnStatus bn_eval_str(const char *src, int32_t eps, BnValue *out);

/**
 * Parses a contour from its JSON form. On success the caller owns the
 * handle and must release it with [`bn_contour_free`].
 */
BnStatus bn_contour_parse(const char *json, BnContour **out);

void bn_contour_free(BnContour *c);

/**
 * Integrates the named kernel (see the core library's kernel registry:
 * identity, conj, square, cube, exp, ln, sin, cos, sqrt, inv) along the
 * contour. Pass 0 for `order` or `subdivisions` to use the defaults.
 */
BnStatus bn_contour_integrate(const BnContour *c,
                              const char *kernel,
                              int32_t eps,
                              uint32_t order,
                              uint32_t subdivisions,
                              BnValue *out);

/**
 * Probes the integral of kernel(L) / (L - l0) around the contour.
 * Writes `*out_divergent = 0` and the integral on a clear contour;
 * writes `*out_divergent = 1` plus the measured clearance and the
 * decision threshold when the singular lines touch the contour.
 */
BnStatus bn_contour_cauchy_probe(const BnContour *c,
                                 const char *kernel,
                                 BnValue l0,
                                 uint32_t order,
                                 uint32_t subdivisions,
                                 BnValue *out_value,
                                 int32_t *out_divergent,
                                 double *out_clearance,
                                 double *out_threshold);

/**
 * Parses a sampled signal from its JSON form; release with
 * [`bn_signal_free`].
 */
BnStatus bn_signal_parse(const char *json, BnSignal **out);

void bn_signal_free(BnSignal *s);

/**
 * Number of samples; 0 for a null handle.
 */
uintptr_t bn_signal_len(const BnSignal *s);

BnStatus bn_signal_sample(const BnSignal *s, uintptr_t index, double *out);

/**
 * Applies the operator x I + y E to the signal, producing a new handle.
 */
BnStatus bn_signal_apply(const BnSignal *s, BnValue a, BnSignal **out);

/**
 * Splits a 2-periodic signal into its 1-periodic and 1-antiperiodic
 * parts, returning two new handles.
 */
BnStatus bn_signal_decompose(const BnSignal *s, BnSignal **out_p1, BnSignal **out_ap1);

/**
 * Parses a field grid from its JSON form; release with [`bn_grid_free`].
 */
BnStatus bn_grid_parse(const char *json, BnGrid **out);

void bn_grid_free(BnGrid *g);

/**
 * Maximum absolute residuals of the first-order system in the chosen
 * sense over the grid interior.
 */
BnStatus bn_grid_cr_residual(const BnGrid *g, BnSense sense, double *out_r1, double *out_r2);

/**
 * Writes 1 when the residuals clear the grid's h^2-scaled threshold.
 */
BnStatus bn_grid_is_analytic(const BnGrid *g, BnSense sense, int32_t *out);

BnStatus bn_grid_wave_residual(const BnGrid *g, double *out_u, double *out_v);

BnStatus bn_grid_laplace_residual(const BnGrid *g, double *out_u, double *out_v);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BINARION_H */
