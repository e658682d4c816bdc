// Copyright 2026 The whens Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace whens {

/// Nodes and positive weights of a 1-D rule on [a, b].
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  double a = -1.0;
  double b = 1.0;
  /// Highest polynomial degree integrated exactly.
  std::size_t exact_degree = 0;

  std::size_t size() const { return nodes.size(); }

  template <class F>
  double integrate(F&& f) const {
    double s = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * f(nodes[i]);
    return s;
  }
};

/// n-point Gauss-Legendre rule on [a, b]. Throws kDomain unless n >= 1 and a < b.
QuadratureRule gauss_legendre(std::size_t n, double a, double b);

/// Laguerre value carried as sign * exp(log_abs) so that large degrees and
/// arguments never overflow. sign is 0 when the value is exactly zero.
struct ScaledValue {
  int sign = 0;
  double log_abs = 0.0;

  double value() const;
};

/// Generalized Laguerre polynomial L_j^alpha(x). Requires j + alpha >= 0.
/// Evaluated by the three-term recurrence. May return +-inf when the true
/// value exceeds the double range; use laguerre_scaled in that regime.
double laguerre(int j, double alpha, double x);
ScaledValue laguerre_scaled(int j, double alpha, double x);

/// The explicit alternating sum, exposed for cross-checking the recurrence.
double laguerre_sum(int j, double alpha, double x);

/// L2-normalized Hermite function h_r(t) (h_0 = 2^{1/4} e^{-pi t^2}).
double hermite_function(int r, double t);

/// h_0..h_{n-1} at t in one recurrence pass.
std::vector<double> hermite_functions(int n, double t);

/// H_{j,r}(z, conj z) * exp(-pi |z|^2 / 2), evaluated in log-magnitude form.
std::complex<double> complex_hermite_weighted(int j, int r, std::complex<double> z);

/// Real radial factor of complex_hermite_weighted: with z = rho e^{i theta},
///   complex_hermite_weighted(j, r, z) = radial * e^{i (j - r) theta}.
double complex_hermite_radial(int j, int r, double rho);

/// P(j + 1, s) = (1/j!) int_0^s t^j e^{-t} dt. Throws kDomain for s < 0.
double regularized_lower_gamma(int j, double s);

/// Default radial quadrature order for an integrand of the given max index.
inline std::size_t default_radial_order(std::size_t max_index) { return 4 * max_index + 32; }

}  // namespace whens
