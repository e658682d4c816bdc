// Copyright 2026 The whens Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace whens {

using cplx = std::complex<double>;

/// A point (x, xi) of the phase plane, identified with z = x + i xi.
struct PhasePoint {
  double x = 0.0;
  double xi = 0.0;

  cplx z() const { return {x, xi}; }
  PhasePoint conj() const { return {x, -xi}; }
  static PhasePoint from_complex(cplx z) { return {z.real(), z.imag()}; }
};

inline PhasePoint operator-(PhasePoint a, PhasePoint b) { return {a.x - b.x, a.xi - b.xi}; }

/// Unit-norm window g = sum_r c_r h_r given by its Hermite coefficients.
class WindowSpec {
 public:
  /// Normalizes coeffs; throws kInvalidArgument on a zero or non-finite vector.
  static WindowSpec from_coefficients(std::vector<cplx> coeffs);
  /// The pure Hermite window h_r.
  static WindowSpec hermite(int r);
  /// Text file with one "r real imag" line per coefficient ('#' starts a comment).
  static WindowSpec load(const std::string& path);
  /// "hermite:<r>" or "file:<path>".
  static WindowSpec parse(const std::string& descriptor);

  std::span<const cplx> coeffs() const { return coeffs_; }
  std::size_t size() const { return coeffs_.size(); }
  /// Factor the raw coefficients were multiplied by to reach unit norm.
  double applied_scale() const { return applied_scale_; }
  /// Index r when the window is a pure h_r (up to a unimodular factor), else -1.
  int pure_index() const;
  const std::string& descriptor() const { return descriptor_; }
  void set_descriptor(std::string d) { descriptor_ = std::move(d); }

 private:
  std::vector<cplx> coeffs_;
  double applied_scale_ = 1.0;
  std::string descriptor_;
};

/// V_{h_r} h_j at p, the short-time Fourier transform with the convention
/// V_g f(x, xi) = int f(t) conj(g(t - x)) e^{-2 pi i xi t} dt.
cplx stft_hermite(int j, int r, PhasePoint p);

/// V_g h_j(p) = sum_r conj(c_r) V_{h_r} h_j(p).
cplx stft_window(const WindowSpec& g, int j, PhasePoint p);

/// V_g h_j(p) for j = 0 .. out.size()-1.
void stft_window_column(const WindowSpec& g, PhasePoint p, std::span<cplx> out);

struct NumericStft {
  cplx value;
  double error_estimate = 0.0;
  /// False when the order-doubling estimate exceeds the tolerance.
  bool accurate = true;
};

/// Direct quadrature of the STFT integral for Hermite-coefficient vectors f and g.
/// Independent of the closed forms; used as their oracle.
NumericStft stft_numeric(std::span<const cplx> g, std::span<const cplx> f, PhasePoint p,
                         double tolerance = 1e-8);

/// Same integral for arbitrary callables, integrated over [lo, hi].
NumericStft stft_numeric_fn(const std::function<cplx(double)>& g,
                            const std::function<cplx(double)>& f, PhasePoint p, double lo,
                            double hi, std::size_t order = 256, double tolerance = 1e-8);

/// K^g(p, q) = <pi(q) g, pi(p) g> in closed form.
cplx reproducing_kernel(const WindowSpec& g, PhasePoint p, PhasePoint q);

/// Given k = K(conj p, conj q), returns e^{i pi (x_q xi_q - x_p xi_p)} k.
cplx gauge_renormalize(cplx k, PhasePoint p, PhasePoint q);

/// c_r -> e^{i r theta} c_r.
WindowSpec metaplectic_rotate(const WindowSpec& g, double theta);

/// R_theta p (counterclockwise rotation of the phase plane).
PhasePoint rotate(PhasePoint p, double theta);

/// Evaluates sum_r c_r h_r(t).
cplx hermite_series(std::span<const cplx> coeffs, double t);

}  // namespace whens
