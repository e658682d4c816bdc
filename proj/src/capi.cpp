// Copyright 2026 The whens Authors
// SPDX-License-Identifier: Apache-2.0

#include "whens/whens.h"

#include <fstream>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "whens/domains.hpp"
#include "whens/ensembles.hpp"
#include "whens/error.hpp"
#include "whens/phasespace.hpp"
#include "whens/sampling.hpp"
#include "whens/specfun.hpp"
#include "whens/toeplitz.hpp"

#ifndef WHENS_VERSION_STRING
#define WHENS_VERSION_STRING "0.0.0"
#endif

struct whens_window {
  whens::WindowSpec value;
};
struct whens_domain {
  whens::PhaseDomain value;
};
struct whens_toeplitz {
  whens::ToeplitzMatrix value;
};
struct whens_spectrum {
  whens::SpectralDecomposition value;
};
struct whens_kernel {
  whens::ProjectionKernel value;
};
struct whens_samples {
  std::vector<whens::PointConfiguration> value;
  std::size_t rank = 0;
};

namespace {

thread_local std::string g_last_error;

whens_status set_error(whens_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

template <class F>
whens_status guard(F&& f) {
  try {
    f();
    g_last_error.clear();
    return WHENS_OK;
  } catch (const whens::Error& e) {
    return set_error(static_cast<whens_status>(static_cast<int>(e.code())), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(WHENS_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(WHENS_INTERNAL, e.what());
  } catch (...) {
    return set_error(WHENS_INTERNAL, "unknown error");
  }
}

void require(bool ok, const char* what) {
  if (!ok) whens::fail(whens::ErrorCode::kInvalidArgument, what);
}

whens::cplx to_cpp(whens_complex z) { return {z.re, z.im}; }
whens_complex to_c(whens::cplx z) { return {z.real(), z.imag()}; }

whens::IndexSet to_set(const std::size_t* v, std::size_t n) {
  require(n == 0 || v != nullptr, "null index array");
  return whens::IndexSet(std::vector<std::size_t>(v, v + n));
}

void write_file(const char* path, const char* header, const auto& body) {
  require(path != nullptr, "null path");
  std::ofstream os(path, std::ios::binary);
  if (!os) whens::fail(whens::ErrorCode::kIo, std::string("cannot open '") + path + "' for writing");
  if (header) os << header;
  body(os);
  os.flush();
  if (!os) whens::fail(whens::ErrorCode::kIo, std::string("write failed for '") + path + "'");
}

void fill_radii(const whens::RadiiReport& rep, whens_annulus_row* rows, whens_radii_summary* summary) {
  if (rows) {
    for (std::size_t k = 0; k < rep.rows.size(); ++k) {
      const auto& r = rep.rows[k];
      rows[k] = {r.lo, r.hi, r.expected, r.observed, r.sigma, r.pass ? 1 : 0};
    }
  }
  if (summary) {
    *summary = {rep.configurations, rep.rows.size(), rep.chi_square, rep.dof, rep.p_value, rep.all_pass ? 1 : 0};
  }
}

}  // namespace

extern "C" {

const char* whens_version(void) { return WHENS_VERSION_STRING; }

const char* whens_last_error(void) { return g_last_error.c_str(); }

const char* whens_status_name(whens_status status) {
  switch (status) {
    case WHENS_OK: return "ok";
    case WHENS_INVALID_ARGUMENT: return "invalid argument";
    case WHENS_DOMAIN_ERROR: return "domain error";
    case WHENS_PARSE_ERROR: return "parse error";
    case WHENS_IO_ERROR: return "i/o error";
    case WHENS_CONVERGENCE: return "convergence failure";
    case WHENS_RANK_DEFICIENT: return "rank deficient";
    case WHENS_REJECTION_CAP: return "rejection cap exceeded";
    case WHENS_INSUFFICIENT_SAMPLES: return "insufficient samples";
    case WHENS_DEGENERATE_GEOMETRY: return "degenerate geometry";
    case WHENS_NUMERICAL: return "numerical check failed";
    case WHENS_INTERNAL: return "internal error";
  }
  return "unknown status";
}

// ---- special functions ----

whens_status whens_laguerre(int j, double alpha, double x, double* out) {
  return guard([&] {
    require(out, "null output");
    *out = whens::laguerre(j, alpha, x);
  });
}

whens_status whens_hermite_function(int r, double t, double* out) {
  return guard([&] {
    require(out, "null output");
    if (r < 0) whens::fail(whens::ErrorCode::kDomain, "hermite_function: r must be >= 0");
    *out = whens::hermite_function(r, t);
  });
}

whens_status whens_complex_hermite_weighted(int j, int r, whens_complex z, whens_complex* out) {
  return guard([&] {
    require(out, "null output");
    *out = to_c(whens::complex_hermite_weighted(j, r, to_cpp(z)));
  });
}

whens_status whens_regularized_lower_gamma(int j, double s, double* out) {
  return guard([&] {
    require(out, "null output");
    *out = whens::regularized_lower_gamma(j, s);
  });
}

whens_status whens_gauss_legendre(size_t n, double a, double b, double* nodes, double* weights) {
  return guard([&] {
    require(nodes && weights, "null output");
    const auto rule = whens::gauss_legendre(n, a, b);
    for (std::size_t i = 0; i < n; ++i) {
      nodes[i] = rule.nodes[i];
      weights[i] = rule.weights[i];
    }
  });
}

// ---- windows ----

whens_status whens_window_hermite(int r, whens_window** out) {
  return guard([&] {
    require(out, "null output");
    *out = new whens_window{whens::WindowSpec::hermite(r)};
  });
}

whens_status whens_window_parse(const char* descriptor, whens_window** out) {
  return guard([&] {
    require(out && descriptor, "null argument");
    *out = new whens_window{whens::WindowSpec::parse(descriptor)};
  });
}

whens_status whens_window_from_coeffs(const whens_complex* coeffs, size_t n, whens_window** out) {
  return guard([&] {
    require(out && (coeffs || n == 0), "null argument");
    std::vector<whens::cplx> c;
    for (std::size_t i = 0; i < n; ++i) c.push_back(to_cpp(coeffs[i]));
    *out = new whens_window{whens::WindowSpec::from_coefficients(std::move(c))};
  });
}

void whens_window_free(whens_window* w) { delete w; }

size_t whens_window_size(const whens_window* w) { return w ? w->value.size() : 0; }

whens_status whens_window_coeffs(const whens_window* w, whens_complex* out, size_t n) {
  return guard([&] {
    require(w && out, "null argument");
    require(n >= w->value.size(), "output buffer too small");
    for (std::size_t i = 0; i < w->value.size(); ++i) out[i] = to_c(w->value.coeffs()[i]);
  });
}

double whens_window_applied_scale(const whens_window* w) { return w ? w->value.applied_scale() : 0.0; }

const char* whens_window_descriptor(const whens_window* w) { return w ? w->value.descriptor().c_str() : ""; }

whens_status whens_metaplectic_rotate(const whens_window* w, double theta, whens_window** out) {
  return guard([&] {
    require(w && out, "null argument");
    *out = new whens_window{whens::metaplectic_rotate(w->value, theta)};
  });
}

whens_status whens_stft_hermite(int j, int r, double x, double xi, whens_complex* out) {
  return guard([&] {
    require(out, "null output");
    *out = to_c(whens::stft_hermite(j, r, {x, xi}));
  });
}

whens_status whens_stft_window(const whens_window* g, int j, double x, double xi, whens_complex* out) {
  return guard([&] {
    require(g && out, "null argument");
    *out = to_c(whens::stft_window(g->value, j, {x, xi}));
  });
}

whens_status whens_stft_numeric(const whens_window* g, const whens_complex* f, size_t n, double x, double xi,
                                whens_complex* out, double* error_estimate) {
  return guard([&] {
    require(g && out && (f || n == 0), "null argument");
    std::vector<whens::cplx> fv;
    for (std::size_t i = 0; i < n; ++i) fv.push_back(to_cpp(f[i]));
    const auto res = whens::stft_numeric(g->value.coeffs(), fv, {x, xi});
    *out = to_c(res.value);
    if (error_estimate) *error_estimate = res.error_estimate;
  });
}

whens_status whens_reproducing_kernel(const whens_window* g, double px, double pxi, double qx, double qxi,
                                      whens_complex* out) {
  return guard([&] {
    require(g && out, "null argument");
    *out = to_c(whens::reproducing_kernel(g->value, {px, pxi}, {qx, qxi}));
  });
}

// ---- domains ----

whens_status whens_domain_parse(const char* descriptor, whens_domain** out) {
  return guard([&] {
    require(descriptor && out, "null argument");
    *out = new whens_domain{whens::PhaseDomain::parse(descriptor)};
  });
}

whens_status whens_domain_disk(double radius, whens_domain** out) {
  return guard([&] {
    require(out, "null output");
    *out = new whens_domain{whens::PhaseDomain::disk(radius)};
  });
}

whens_status whens_domain_annulus(double inner, double outer, whens_domain** out) {
  return guard([&] {
    require(out, "null output");
    *out = new whens_domain{whens::PhaseDomain::annulus(inner, outer)};
  });
}

whens_status whens_domain_rect(double a, double b, double c, double d, whens_domain** out) {
  return guard([&] {
    require(out, "null output");
    *out = new whens_domain{whens::PhaseDomain::rect(a, b, c, d)};
  });
}

whens_status whens_domain_polygon(const double* xy, size_t n, whens_domain** out) {
  return guard([&] {
    require(out && (xy || n == 0), "null argument");
    std::vector<whens::PhasePoint> v;
    for (std::size_t i = 0; i < n; ++i) v.push_back({xy[2 * i], xy[2 * i + 1]});
    *out = new whens_domain{whens::PhaseDomain::polygon(std::move(v))};
  });
}

whens_status whens_domain_scaled(const whens_domain* d, double m, whens_domain** out) {
  return guard([&] {
    require(d && out, "null argument");
    *out = new whens_domain{d->value.scaled(m)};
  });
}

void whens_domain_free(whens_domain* d) { delete d; }

double whens_domain_measure(const whens_domain* d) { return d ? d->value.measure() : 0.0; }

double whens_domain_perimeter(const whens_domain* d) { return d ? d->value.perimeter() : 0.0; }

double whens_domain_bounding_radius(const whens_domain* d) { return d ? d->value.bounding_radius() : 0.0; }

int whens_domain_contains(const whens_domain* d, double x, double xi) {
  return d && d->value.contains({x, xi}) ? 1 : 0;
}

const char* whens_domain_descriptor(const whens_domain* d) { return d ? d->value.descriptor().c_str() : ""; }

whens_status whens_n_omega(const whens_domain* d, size_t* out) {
  return guard([&] {
    require(d && out, "null argument");
    *out = whens::n_omega(d->value);
  });
}

// ---- localization operator ----

whens_status whens_default_basis_size(const whens_domain* d, size_t* out) {
  return guard([&] {
    require(d && out, "null argument");
    *out = whens::default_basis_size(d->value);
  });
}

whens_status whens_toeplitz_assemble(const whens_window* g, const whens_domain* d, size_t M,
                                     const whens_assembly_options* opts, whens_toeplitz** out) {
  return guard([&] {
    require(g && d && out, "null argument");
    whens::AssemblyOptions o;
    if (opts) {
      o.order = opts->order;
      o.angular_order = opts->angular_order;
      o.force_generic = opts->force_generic != 0;
    }
    *out = new whens_toeplitz{whens::assemble(g->value, d->value, M, o)};
  });
}

void whens_toeplitz_free(whens_toeplitz* t) { delete t; }

size_t whens_toeplitz_size(const whens_toeplitz* t) { return t ? t->value.size : 0; }

size_t whens_toeplitz_order(const whens_toeplitz* t) { return t ? t->value.order : 0; }

size_t whens_toeplitz_angular_order(const whens_toeplitz* t) { return t ? t->value.angular_order : 0; }

double whens_toeplitz_trace(const whens_toeplitz* t) { return t ? t->value.trace() : 0.0; }

double whens_toeplitz_tail_mass(const whens_toeplitz* t) { return t ? t->value.tail_mass : 0.0; }

whens_status whens_toeplitz_entry(const whens_toeplitz* t, size_t j, size_t k, whens_complex* out) {
  return guard([&] {
    require(t && out, "null argument");
    require(j < t->value.size && k < t->value.size, "index out of range");
    *out = to_c(t->value.entries(static_cast<std::ptrdiff_t>(j), static_cast<std::ptrdiff_t>(k)));
  });
}

size_t whens_toeplitz_warning_count(const whens_toeplitz* t) { return t ? t->value.warnings.size() : 0; }

const char* whens_toeplitz_warning(const whens_toeplitz* t, size_t i) {
  return t && i < t->value.warnings.size() ? t->value.warnings[i].c_str() : "";
}

whens_status whens_eigendecompose(const whens_toeplitz* t, whens_spectrum** out) {
  return guard([&] {
    require(t && out, "null argument");
    *out = new whens_spectrum{whens::eigendecompose(t->value)};
  });
}

void whens_spectrum_free(whens_spectrum* s) { delete s; }

size_t whens_spectrum_size(const whens_spectrum* s) {
  return s ? static_cast<size_t>(s->value.eigenvalues.size()) : 0;
}

whens_status whens_spectrum_eigenvalues(const whens_spectrum* s, double* out, size_t n) {
  return guard([&] {
    require(s && out, "null argument");
    const auto m = static_cast<std::size_t>(s->value.eigenvalues.size());
    require(n >= m, "output buffer too small");
    for (std::size_t i = 0; i < m; ++i) out[i] = s->value.eigenvalues(static_cast<std::ptrdiff_t>(i));
  });
}

whens_status whens_spectrum_eigenvector(const whens_spectrum* s, size_t column, whens_complex* out, size_t n) {
  return guard([&] {
    require(s && out, "null argument");
    const auto m = static_cast<std::size_t>(s->value.eigenvectors.rows());
    require(column < m, "column out of range");
    require(n >= m, "output buffer too small");
    for (std::size_t i = 0; i < m; ++i) {
      out[i] = to_c(s->value.eigenvectors(static_cast<std::ptrdiff_t>(i), static_cast<std::ptrdiff_t>(column)));
    }
  });
}

double whens_spectrum_residual(const whens_spectrum* s) { return s ? s->value.residual : 0.0; }

const char* whens_spectrum_tie_break(const whens_spectrum* s) { return s ? s->value.tie_break.c_str() : ""; }

whens_status whens_weyl_count(const whens_spectrum* s, double delta, size_t* out) {
  return guard([&] {
    require(s && out, "null argument");
    *out = whens::weyl_count(s->value, delta);
  });
}

whens_status whens_mu_radial(int r, int j, double R, double* out) {
  return guard([&] {
    require(out, "null output");
    *out = whens::mu_radial(r, j, R);
  });
}

whens_status whens_double_orthogonality(const whens_spectrum* s, const whens_toeplitz* t, size_t count, size_t order,
                                        double* max_off_diagonal, double* max_diagonal_error) {
  return guard([&] {
    require(s && t, "null argument");
    const auto res = whens::double_orthogonality_check(s->value, t->value, count, order);
    if (max_off_diagonal) *max_off_diagonal = res.max_off_diagonal;
    if (max_diagonal_error) *max_diagonal_error = res.max_diagonal_error;
  });
}

// ---- ensembles ----

whens_status whens_kernel_finite_wh(const whens_spectrum* s, const whens_toeplitz* t, whens_kernel** out) {
  return guard([&] {
    require(s && t && out, "null argument");
    *out = new whens_kernel{whens::finite_wh_kernel(s->value, t->value)};
  });
}

whens_status whens_kernel_spectral(const whens_spectrum* s, const whens_toeplitz* t, const size_t* positions,
                                   size_t n, whens_kernel** out) {
  return guard([&] {
    require(s && t && out, "null argument");
    *out = new whens_kernel{whens::ProjectionKernel::spectral(s->value, t->value, to_set(positions, n))};
  });
}

whens_status whens_kernel_pure_poly(int r, size_t N, whens_kernel** out) {
  return guard([&] {
    require(out, "null output");
    *out = new whens_kernel{whens::pure_poly_kernel(r, N)};
  });
}

whens_status whens_kernel_pure_poly_set(int r, const size_t* J, size_t n, whens_kernel** out) {
  return guard([&] {
    require(out, "null output");
    *out = new whens_kernel{whens::ProjectionKernel::pure_poly(r, to_set(J, n))};
  });
}

void whens_kernel_free(whens_kernel* k) { delete k; }

size_t whens_kernel_rank(const whens_kernel* k) { return k ? k->value.rank() : 0; }

const char* whens_kernel_descriptor(const whens_kernel* k) { return k ? k->value.descriptor().c_str() : ""; }

whens_status whens_kernel_eval(const whens_kernel* k, double px, double pxi, double qx, double qxi,
                               whens_complex* out) {
  return guard([&] {
    require(k && out, "null argument");
    *out = to_c(k->value({px, pxi}, {qx, qxi}));
  });
}

whens_status whens_intensity(const whens_kernel* k, double x, double xi, double* out) {
  return guard([&] {
    require(k && out, "null argument");
    *out = k->value.intensity({x, xi});
  });
}

whens_status whens_intensity_grid(const whens_kernel* k, double x0, double x1, double xi0, double xi1, size_t nx,
                                  size_t nxi, double* out) {
  return guard([&] {
    require(k && out, "null argument");
    const auto g = whens::intensity_grid(k->value, x0, x1, xi0, xi1, nx, nxi);
    std::copy(g.values.begin(), g.values.end(), out);
  });
}

whens_status whens_kernel_envelope_radius(const whens_kernel* k, double* out) {
  return guard([&] {
    require(k && out, "null argument");
    *out = k->value.envelope_radius();
  });
}

whens_status whens_l1_deviation_spectral(const whens_spectrum* s, const whens_toeplitz* t, const size_t* positions,
                                         size_t n, double* out) {
  return guard([&] {
    require(s && t && out, "null argument");
    *out = whens::l1_deviation_spectral(s->value, t->value, to_set(positions, n));
  });
}

whens_status whens_l1_deviation_poly(int r, size_t N, double* out) {
  return guard([&] {
    require(out, "null output");
    *out = whens::l1_deviation_poly(r, N);
  });
}

whens_status whens_poly_index_set_for_area(int r, size_t N, double area, size_t* out, int* tie_at_cut) {
  return guard([&] {
    require(out, "null output");
    std::vector<std::string> warnings;
    const auto set = whens::poly_index_set_for_area(r, N, area, &warnings);
    std::copy(set.values().begin(), set.values().end(), out);
    if (tie_at_cut) *tie_at_cut = warnings.empty() ? 0 : 1;
  });
}

whens_status whens_poly_index_set(int r, size_t N, size_t* out, int* tie_at_cut) {
  return whens_poly_index_set_for_area(r, N, static_cast<double>(N), out, tie_at_cut);
}

whens_status whens_trace_distance_poly(int r, size_t N, double* out) {
  return guard([&] {
    require(out, "null output");
    require(N >= 1, "N must be >= 1");
    *out = whens::trace_distance_poly(r, N);
  });
}

whens_status whens_mu_crossing_radius(int r, int j0, int j1, double lo, double hi, double* out) {
  return guard([&] {
    require(out, "null output");
    *out = whens::mu_crossing_radius(r, j0, j1, lo, hi);
  });
}

// ---- sampling ----

whens_status whens_sample_dpp(const whens_kernel* k, uint64_t seed, size_t count, whens_samples** out) {
  return guard([&] {
    require(k && out, "null argument");
    auto s = std::make_unique<whens_samples>();
    s->value = whens::sample_dpp_batch(k->value, seed, count);
    s->rank = k->value.rank();
    *out = s.release();
  });
}

void whens_samples_free(whens_samples* s) { delete s; }

size_t whens_samples_count(const whens_samples* s) { return s ? s->value.size() : 0; }

size_t whens_samples_rank(const whens_samples* s) { return s ? s->rank : 0; }

uint64_t whens_samples_proposals(const whens_samples* s) {
  uint64_t total = 0;
  if (s) {
    for (const auto& c : s->value) total += c.stats.proposals;
  }
  return total;
}

whens_status whens_samples_points(const whens_samples* s, size_t i, double* xy, size_t n) {
  return guard([&] {
    require(s && xy, "null argument");
    require(i < s->value.size(), "sample index out of range");
    const auto& pts = s->value[i].points;
    require(n >= 2 * pts.size(), "output buffer too small");
    for (std::size_t k = 0; k < pts.size(); ++k) {
      xy[2 * k] = pts[k].x;
      xy[2 * k + 1] = pts[k].xi;
    }
  });
}

whens_status whens_sample_kostlan(int r, const size_t* J, size_t n, uint64_t seed, size_t count, double* radii) {
  return guard([&] {
    require(radii || count == 0 || n == 0, "null output");
    const auto set = to_set(J, n);
    // Warm the law cache serially; draws are then independent per configuration.
    (void)whens::sample_kostlan(r, set, seed, 0);
    const auto total = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t c = 0; c < total; ++c) {
      const auto draws = whens::sample_kostlan(r, set, seed, static_cast<std::uint64_t>(c));
      std::copy(draws.begin(), draws.end(), radii + static_cast<std::size_t>(c) * n);
    }
  });
}

whens_status whens_radial_density(int r, int j, double x, double* out) {
  return guard([&] {
    require(out, "null output");
    *out = whens::RadialLaw(r, j).density(x);
  });
}

whens_status whens_radial_cdf(int r, int j, double x, double* out) {
  return guard([&] {
    require(out, "null output");
    *out = whens::RadialLaw(r, j).cdf(x);
  });
}

whens_status whens_radial_density_consistency(int r, int j, double* out) {
  return guard([&] {
    require(out, "null output");
    *out = whens::density_consistency(r, j);
  });
}

whens_status whens_hole_probability(int r, const size_t* J, size_t n, double R, double* out) {
  return guard([&] {
    require(out, "null output");
    *out = whens::hole_probability(r, to_set(J, n), R);
  });
}

whens_status whens_radii_test_samples(const whens_samples* s, int r, const size_t* J, size_t n, size_t annuli,
                                      whens_annulus_row* rows, whens_radii_summary* summary) {
  return guard([&] {
    require(s, "null argument");
    fill_radii(whens::radii_distribution_test(s->value, r, to_set(J, n), annuli), rows, summary);
  });
}

whens_status whens_radii_test_radii(const double* radii, size_t count, int r, const size_t* J, size_t n,
                                    size_t annuli, whens_annulus_row* rows, whens_radii_summary* summary) {
  return guard([&] {
    require(radii || count == 0, "null argument");
    std::vector<std::vector<double>> v(count);
    for (std::size_t c = 0; c < count; ++c) v[c].assign(radii + c * n, radii + (c + 1) * n);
    fill_radii(whens::radii_distribution_test(v, r, to_set(J, n), annuli), rows, summary);
  });
}

// ---- CSV ----

whens_status whens_write_spectrum_csv(const whens_spectrum* s, const char* path, const char* header) {
  return guard([&] {
    require(s, "null argument");
    write_file(path, header, [&](std::ostream& os) { whens::write_spectrum_csv(os, s->value); });
  });
}

whens_status whens_write_eigenvectors_csv(const whens_spectrum* s, const whens_toeplitz* t, const char* path,
                                          const char* header) {
  return guard([&] {
    require(s && t, "null argument");
    write_file(path, header, [&](std::ostream& os) { whens::write_eigenvectors_csv(os, s->value, t->value); });
  });
}

whens_status whens_write_samples_csv(const whens_samples* s, const char* path, const char* header) {
  return guard([&] {
    require(s, "null argument");
    write_file(path, header, [&](std::ostream& os) { whens::write_samples_csv(os, s->value); });
  });
}

}  // extern "C"
