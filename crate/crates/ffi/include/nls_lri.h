#ifndef NLS_LRI_H
#define NLS_LRI_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every fallible call.
typedef enum NlsStatus {
  NLS_STATUS_OK = 0,
  // The field became non-finite during a run.
  NLS_STATUS_BLOW_UP = 1,
  // A parameter was out of range (grid size, step, scheme, lambda, ...).
  NLS_STATUS_INVALID_ARGUMENT = 2,
  // File could not be read, written or parsed.
  NLS_STATUS_IO = 3,
  NLS_STATUS_NULL_POINTER = 4,
  // The mass-corrected scheme was asked to run on zero initial mass.
  NLS_STATUS_DEGENERATE_MASS = 5,
  // A Rust panic was caught at the boundary.
  NLS_STATUS_INTERNAL = 6,
} NlsStatus;

// Time integrator selector, mirroring the library's `Scheme`.
typedef enum NlsScheme {
  NLS_SCHEME_LRI = 0,
  NLS_SCHEME_NLRI = 1,
  NLS_SCHEME_LIE = 2,
  NLS_SCHEME_STRANG = 3,
  NLS_SCHEME_EXP_EULER = 4,
  NLS_SCHEME_ORACLE = 5,
} NlsScheme;

// Opaque spectral field.
typedef struct NlsField NlsField;

// Parameters of [`nls_evolve`].
typedef struct NlsRunParams {
  enum NlsScheme scheme;
  double tau;
  // -1 (defocusing) or 1 (focusing).
  int32_t lambda;
  double t_final;
  // Nonzero to evaluate nonlinear terms on a zero-padded grid.
  int32_t dealias;
} NlsRunParams;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Builds a field on an `n`-point grid from `n` real and `n` imaginary
// parts in ascending wavenumber order.
//
// # Safety
// `re` and `im` must each point to `n` readable doubles; `out` must be
// writable.
enum NlsStatus nls_field_from_coeffs(size_t n,
                                     const double *re,
                                     const double *im,
                                     struct NlsField **out);

// Releases a handle. Null is ignored.
//
// # Safety
// `field` must come from this library and must not be used afterwards.
void nls_field_free(struct NlsField *field);

// Grid size of the field, 0 for null.
//
// # Safety
// `field` must be null or a live handle.
size_t nls_field_len(const struct NlsField *field);

// Copies the coefficients in ascending wavenumber order into `re` and
// `im`, each of capacity `len`, which must equal the grid size.
//
// # Safety
// `re` and `im` must each point to `len` writable doubles.
enum NlsStatus nls_field_coeffs(const struct NlsField *field, double *re, double *im, size_t len);

// Seeded rough initial data with zero mean and unit sup norm.
//
// # Safety
// `out` must be writable.
enum NlsStatus nls_gen_rough_data(size_t n, double gamma, uint64_t seed, struct NlsField **out);

// Discrete mass `Σ|û_k|²`.
//
// # Safety
// `field` must be a live handle and `out` writable.
enum NlsStatus nls_field_mass(const struct NlsField *field, double *out);

// `H^gamma` norm, `gamma ≥ 0`.
//
// # Safety
// `field` must be a live handle and `out` writable.
enum NlsStatus nls_field_sobolev_norm(const struct NlsField *field, double gamma, double *out);

// Parameters with the library defaults for `scheme` and `tau`.
struct NlsRunParams nls_run_params_default(enum NlsScheme scheme, double tau);

// Evolves `field` to `params.t_final` and returns the final field in a new
// handle. `mass_drift` (may be null) receives `max_n |M(uⁿ) - M(u⁰)|`.
//
// # Safety
// `field` must be a live handle, `params` and `out` valid pointers.
enum NlsStatus nls_evolve(const struct NlsField *field,
                          const struct NlsRunParams *params,
                          struct NlsField **out,
                          double *mass_drift);

// Reads a JSON field file.
//
// # Safety
// `path` must be a nul-terminated string and `out` writable.
enum NlsStatus nls_field_read_json(const char *path, struct NlsField **out);

// Writes the field as a JSON file.
//
// # Safety
// `field` must be a live handle and `path` a nul-terminated string.
enum NlsStatus nls_field_write_json(const struct NlsField *field, const char *path);

// Copies the last error message of this thread into `buf` (nul-terminated,
// truncated to `len - 1` bytes) and returns the full message length, or 0
// when no error has occurred. Pass a null `buf` to query the length.
//
// # Safety
// `buf` must be null or point to `len` writable bytes.
size_t nls_last_error_message(char *buf, size_t len);

// Static description of a status code.
const char *nls_status_name(enum NlsStatus status);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NLS_LRI_H */
