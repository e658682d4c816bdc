/* Copyright 2026 The whens Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to the whens library. All objects are opaque handles created by
 * a whens_*_create / constructor function and released by the matching
 * *_free function (which accepts NULL). Functions return a whens_status; on
 * failure the calling thread's whens_last_error() describes the cause and
 * output arguments are left untouched.
 */
#ifndef WHENS_WHENS_H_
#define WHENS_WHENS_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define WHENS_API __declspec(dllexport)
#else
#define WHENS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum whens_status {
  WHENS_OK = 0,
  WHENS_INVALID_ARGUMENT = 1,
  WHENS_DOMAIN_ERROR = 2,
  WHENS_PARSE_ERROR = 3,
  WHENS_IO_ERROR = 4,
  WHENS_CONVERGENCE = 5,
  WHENS_RANK_DEFICIENT = 6,
  WHENS_REJECTION_CAP = 7,
  WHENS_INSUFFICIENT_SAMPLES = 8,
  WHENS_DEGENERATE_GEOMETRY = 9,
  WHENS_NUMERICAL = 10,
  WHENS_INTERNAL = 99
} whens_status;

typedef struct whens_complex {
  double re;
  double im;
} whens_complex;

typedef struct whens_window whens_window;
typedef struct whens_domain whens_domain;
typedef struct whens_toeplitz whens_toeplitz;
typedef struct whens_spectrum whens_spectrum;
typedef struct whens_kernel whens_kernel;
typedef struct whens_samples whens_samples;

WHENS_API const char* whens_version(void);
/* Message of the last failed call on this thread ("" if none). */
WHENS_API const char* whens_last_error(void);
WHENS_API const char* whens_status_name(whens_status status);

/* ---- special functions ---- */
WHENS_API whens_status whens_laguerre(int j, double alpha, double x, double* out);
WHENS_API whens_status whens_hermite_function(int r, double t, double* out);
WHENS_API whens_status whens_complex_hermite_weighted(int j, int r, whens_complex z, whens_complex* out);
WHENS_API whens_status whens_regularized_lower_gamma(int j, double s, double* out);
/* nodes and weights must each hold n values. */
WHENS_API whens_status whens_gauss_legendre(size_t n, double a, double b, double* nodes, double* weights);

/* ---- windows and phase space ---- */
WHENS_API whens_status whens_window_hermite(int r, whens_window** out);
/* "hermite:<r>" or "file:<path>" */
WHENS_API whens_status whens_window_parse(const char* descriptor, whens_window** out);
WHENS_API whens_status whens_window_from_coeffs(const whens_complex* coeffs, size_t n, whens_window** out);
WHENS_API void whens_window_free(whens_window* w);
WHENS_API size_t whens_window_size(const whens_window* w);
WHENS_API whens_status whens_window_coeffs(const whens_window* w, whens_complex* out, size_t n);
WHENS_API double whens_window_applied_scale(const whens_window* w);
WHENS_API const char* whens_window_descriptor(const whens_window* w);
WHENS_API whens_status whens_metaplectic_rotate(const whens_window* w, double theta, whens_window** out);

WHENS_API whens_status whens_stft_hermite(int j, int r, double x, double xi, whens_complex* out);
WHENS_API whens_status whens_stft_window(const whens_window* g, int j, double x, double xi, whens_complex* out);
/* Quadrature oracle for V_g f(x, xi); f given by n Hermite coefficients.
 * error_estimate may be NULL. */
WHENS_API whens_status whens_stft_numeric(const whens_window* g, const whens_complex* f, size_t n, double x,
                                          double xi, whens_complex* out, double* error_estimate);
WHENS_API whens_status whens_reproducing_kernel(const whens_window* g, double px, double pxi, double qx, double qxi,
                                                whens_complex* out);

/* ---- domains ---- */
/* "disk:R", "annulus:r0,R", "rect:a,b,c,d", "poly:@file" */
WHENS_API whens_status whens_domain_parse(const char* descriptor, whens_domain** out);
WHENS_API whens_status whens_domain_disk(double radius, whens_domain** out);
WHENS_API whens_status whens_domain_annulus(double inner, double outer, whens_domain** out);
WHENS_API whens_status whens_domain_rect(double a, double b, double c, double d, whens_domain** out);
/* xy holds n interleaved vertex pairs. */
WHENS_API whens_status whens_domain_polygon(const double* xy, size_t n, whens_domain** out);
WHENS_API whens_status whens_domain_scaled(const whens_domain* d, double m, whens_domain** out);
WHENS_API void whens_domain_free(whens_domain* d);
WHENS_API double whens_domain_measure(const whens_domain* d);
WHENS_API double whens_domain_perimeter(const whens_domain* d);
WHENS_API double whens_domain_bounding_radius(const whens_domain* d);
WHENS_API int whens_domain_contains(const whens_domain* d, double x, double xi);
WHENS_API const char* whens_domain_descriptor(const whens_domain* d);
WHENS_API whens_status whens_n_omega(const whens_domain* d, size_t* out);

/* ---- localization operator ---- */
typedef struct whens_assembly_options {
  size_t order;         /* 0: 4M + 32 */
  size_t angular_order; /* 0: max(64, 4M) */
  int force_generic;    /* nonzero: full 2-D quadrature even for disks */
} whens_assembly_options;

WHENS_API whens_status whens_default_basis_size(const whens_domain* d, size_t* out);
/* opts may be NULL. */
WHENS_API whens_status whens_toeplitz_assemble(const whens_window* g, const whens_domain* d, size_t M,
                                               const whens_assembly_options* opts, whens_toeplitz** out);
WHENS_API void whens_toeplitz_free(whens_toeplitz* t);
WHENS_API size_t whens_toeplitz_size(const whens_toeplitz* t);
WHENS_API size_t whens_toeplitz_order(const whens_toeplitz* t);
WHENS_API size_t whens_toeplitz_angular_order(const whens_toeplitz* t);
WHENS_API double whens_toeplitz_trace(const whens_toeplitz* t);
WHENS_API double whens_toeplitz_tail_mass(const whens_toeplitz* t);
WHENS_API whens_status whens_toeplitz_entry(const whens_toeplitz* t, size_t j, size_t k, whens_complex* out);
WHENS_API size_t whens_toeplitz_warning_count(const whens_toeplitz* t);
WHENS_API const char* whens_toeplitz_warning(const whens_toeplitz* t, size_t i);

WHENS_API whens_status whens_eigendecompose(const whens_toeplitz* t, whens_spectrum** out);
WHENS_API void whens_spectrum_free(whens_spectrum* s);
WHENS_API size_t whens_spectrum_size(const whens_spectrum* s);
WHENS_API whens_status whens_spectrum_eigenvalues(const whens_spectrum* s, double* out, size_t n);
WHENS_API whens_status whens_spectrum_eigenvector(const whens_spectrum* s, size_t column, whens_complex* out,
                                                  size_t n);
WHENS_API double whens_spectrum_residual(const whens_spectrum* s);
WHENS_API const char* whens_spectrum_tie_break(const whens_spectrum* s);

WHENS_API whens_status whens_weyl_count(const whens_spectrum* s, double delta, size_t* out);
WHENS_API whens_status whens_mu_radial(int r, int j, double R, double* out);
/* count = 0: all eigenfunctions; order = 0: assembly order. */
WHENS_API whens_status whens_double_orthogonality(const whens_spectrum* s, const whens_toeplitz* t, size_t count,
                                                  size_t order, double* max_off_diagonal,
                                                  double* max_diagonal_error);

/* ---- ensembles ---- */
WHENS_API whens_status whens_kernel_finite_wh(const whens_spectrum* s, const whens_toeplitz* t, whens_kernel** out);
/* positions index the sorted spectrum. */
WHENS_API whens_status whens_kernel_spectral(const whens_spectrum* s, const whens_toeplitz* t,
                                             const size_t* positions, size_t n, whens_kernel** out);
WHENS_API whens_status whens_kernel_pure_poly(int r, size_t N, whens_kernel** out);
WHENS_API whens_status whens_kernel_pure_poly_set(int r, const size_t* J, size_t n, whens_kernel** out);
WHENS_API void whens_kernel_free(whens_kernel* k);
WHENS_API size_t whens_kernel_rank(const whens_kernel* k);
WHENS_API const char* whens_kernel_descriptor(const whens_kernel* k);
WHENS_API whens_status whens_kernel_eval(const whens_kernel* k, double px, double pxi, double qx, double qxi,
                                         whens_complex* out);
WHENS_API whens_status whens_intensity(const whens_kernel* k, double x, double xi, double* out);
/* out holds nx * nxi values, row-major in xi, grid including the corners. */
WHENS_API whens_status whens_intensity_grid(const whens_kernel* k, double x0, double x1, double xi0, double xi1,
                                            size_t nx, size_t nxi, double* out);
WHENS_API whens_status whens_kernel_envelope_radius(const whens_kernel* k, double* out);

WHENS_API whens_status whens_l1_deviation_spectral(const whens_spectrum* s, const whens_toeplitz* t,
                                                   const size_t* positions, size_t n, double* out);
WHENS_API whens_status whens_l1_deviation_poly(int r, size_t N, double* out);
/* out holds N indices; *tie_at_cut (may be NULL) is set when the cut was
 * decided by the tie-break. */
WHENS_API whens_status whens_poly_index_set(int r, size_t N, size_t* out, int* tie_at_cut);
WHENS_API whens_status whens_poly_index_set_for_area(int r, size_t N, double area, size_t* out, int* tie_at_cut);
WHENS_API whens_status whens_trace_distance_poly(int r, size_t N, double* out);
WHENS_API whens_status whens_mu_crossing_radius(int r, int j0, int j1, double lo, double hi, double* out);

/* ---- sampling ---- */
WHENS_API whens_status whens_sample_dpp(const whens_kernel* k, uint64_t seed, size_t count, whens_samples** out);
WHENS_API void whens_samples_free(whens_samples* s);
WHENS_API size_t whens_samples_count(const whens_samples* s);
WHENS_API size_t whens_samples_rank(const whens_samples* s);
WHENS_API uint64_t whens_samples_proposals(const whens_samples* s);
/* xy holds 2 * rank values (x, xi interleaved). */
WHENS_API whens_status whens_samples_points(const whens_samples* s, size_t i, double* xy, size_t n);

/* radii holds count * n draws; configuration c at [c * n, (c + 1) * n). */
WHENS_API whens_status whens_sample_kostlan(int r, const size_t* J, size_t n, uint64_t seed, size_t count,
                                            double* radii);
WHENS_API whens_status whens_radial_density(int r, int j, double x, double* out);
WHENS_API whens_status whens_radial_cdf(int r, int j, double x, double* out);
WHENS_API whens_status whens_radial_density_consistency(int r, int j, double* out);
WHENS_API whens_status whens_hole_probability(int r, const size_t* J, size_t n, double R, double* out);

typedef struct whens_annulus_row {
  double lo;
  double hi;
  double expected;
  double observed;
  double sigma;
  int pass;
} whens_annulus_row;

typedef struct whens_radii_summary {
  size_t configurations;
  size_t annuli;
  double chi_square;
  size_t dof;
  double p_value;
  int all_pass;
} whens_radii_summary;

/* rows holds `annuli` entries. */
WHENS_API whens_status whens_radii_test_samples(const whens_samples* s, int r, const size_t* J, size_t n,
                                                size_t annuli, whens_annulus_row* rows, whens_radii_summary* summary);
WHENS_API whens_status whens_radii_test_radii(const double* radii, size_t count, int r, const size_t* J, size_t n,
                                              size_t annuli, whens_annulus_row* rows, whens_radii_summary* summary);

/* ---- CSV export; header (may be NULL) is written first, verbatim. ---- */
WHENS_API whens_status whens_write_spectrum_csv(const whens_spectrum* s, const char* path, const char* header);
WHENS_API whens_status whens_write_eigenvectors_csv(const whens_spectrum* s, const whens_toeplitz* t,
                                                    const char* path, const char* header);
WHENS_API whens_status whens_write_samples_csv(const whens_samples* s, const char* path, const char* header);

#ifdef __cplusplus
}
#endif

#endif /* WHENS_WHENS_H_ */
