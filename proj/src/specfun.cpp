// Copyright 2026 The whens Authors
// SPDX-License-Identifier: Apache-2.0

#include "whens/specfun.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "whens/error.hpp"

namespace whens {

namespace {

constexpr double kPi = std::numbers::pi;
// The alternating sum cancels badly once x grows (1e-8 relative by degree 18
// at x = 12), so it only serves the two trivial degrees.
constexpr int kSumMaxDegree = 1;

// Rule on [-1, 1], computed once per order.
const QuadratureRule& reference_rule(std::size_t n) {
  static std::mutex mutex;
  static std::map<std::size_t, QuadratureRule> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  rule.exact_degree = 2 * n - 1;
  const std::size_t half = (n + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    double x = std::cos(kPi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
        p0 = p1;
        p1 = p2;
      }
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged node.
    double p0 = 1.0;
    double p1 = x;
    for (std::size_t k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
      p0 = p1;
      p1 = p2;
    }
    dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return cache.emplace(n, std::move(rule)).first->second;
}

void check_laguerre_args(int j, double alpha) {
  if (j < 0 || j + alpha < 0.0) {
    fail(ErrorCode::kDomain, "laguerre: requires j >= 0 and j + alpha >= 0");
  }
}

ScaledValue to_scaled(double v) {
  ScaledValue out;
  if (v == 0.0) return out;
  out.sign = v > 0 ? 1 : -1;
  out.log_abs = std::log(std::abs(v));
  return out;
}

}  // namespace

QuadratureRule gauss_legendre(std::size_t n, double a, double b) {
  if (n < 1) fail(ErrorCode::kDomain, "gauss_legendre: n must be >= 1");
  if (!(a < b)) fail(ErrorCode::kDomain, "gauss_legendre: requires a < b");
  const QuadratureRule& ref = reference_rule(n);
  QuadratureRule rule;
  rule.a = a;
  rule.b = b;
  rule.exact_degree = ref.exact_degree;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  for (std::size_t i = 0; i < n; ++i) {
    rule.nodes[i] = mid + half * ref.nodes[i];
    rule.weights[i] = half * ref.weights[i];
  }
  return rule;
}

double ScaledValue::value() const {
  if (sign == 0) return 0.0;
  return sign * std::exp(log_abs);
}

double laguerre_sum(int j, double alpha, double x) {
  check_laguerre_args(j, alpha);
  const double n = j + alpha;
  double sum = 0.0;
  double x_pow_over_fact = 1.0;  // x^i / i!
  for (int i = 0; i <= j; ++i) {
    if (i > 0) x_pow_over_fact *= x / i;
    // binom(n, j - i) as a finite product; vanishes when n is an integer below j - i.
    const int k = j - i;
    double binom = 1.0;
    for (int m = 1; m <= k; ++m) binom *= (n - k + m) / m;
    const double term = binom * x_pow_over_fact;
    sum += (i % 2 == 0) ? term : -term;
  }
  return sum;
}

ScaledValue laguerre_scaled(int j, double alpha, double x) {
  check_laguerre_args(j, alpha);
  if (j <= kSumMaxDegree) return to_scaled(laguerre_sum(j, alpha, x));

  // Forward recurrence with periodic rescaling; the exponent is tracked in log_scale.
  double prev = 1.0;
  double cur = 1.0 + alpha - x;
  double log_scale = 0.0;
  for (int k = 1; k < j; ++k) {
    const double next = ((2.0 * k + 1.0 + alpha - x) * cur - (k + alpha) * prev) / (k + 1.0);
    prev = cur;
    cur = next;
    const double mag = std::abs(cur);
    if (mag > 1e150) {
      prev /= mag;
      cur /= mag;
      log_scale += std::log(mag);
    }
  }
  ScaledValue out = to_scaled(cur);
  if (out.sign != 0) out.log_abs += log_scale;
  return out;
}

double laguerre(int j, double alpha, double x) {
  if (j <= kSumMaxDegree) return laguerre_sum(j, alpha, x);
  return laguerre_scaled(j, alpha, x).value();
}

double hermite_function(int r, double t) {
  if (r < 0) fail(ErrorCode::kDomain, "hermite_function: r must be >= 0");
  return hermite_functions(r + 1, t)[static_cast<std::size_t>(r)];
}

std::vector<double> hermite_functions(int n, double t) {
  std::vector<double> h(static_cast<std::size_t>(std::max(n, 0)), 0.0);
  if (n <= 0) return h;
  const double x = std::sqrt(2.0 * kPi) * t;
  h[0] = std::pow(2.0, 0.25) * std::exp(-kPi * t * t);
  if (n > 1) h[1] = std::sqrt(2.0) * x * h[0];
  for (int k = 1; k + 1 < n; ++k) {
    h[k + 1] = std::sqrt(2.0 / (k + 1.0)) * x * h[k] - std::sqrt(k / (k + 1.0)) * h[k - 1];
  }
  return h;
}

double complex_hermite_radial(int j, int r, double rho) {
  if (j < 0 || r < 0) fail(ErrorCode::kDomain, "complex_hermite: indices must be >= 0");
  const int lo = std::min(j, r);
  const int hi = std::max(j, r);
  const int k = hi - lo;
  rho = std::abs(rho);
  if (rho == 0.0 && k > 0) return 0.0;
  const double s = kPi * rho * rho;
  const ScaledValue lag = laguerre_scaled(lo, k, s);
  if (lag.sign == 0) return 0.0;
  double log_mag = 0.5 * (std::lgamma(lo + 1.0) - std::lgamma(hi + 1.0)) + lag.log_abs - 0.5 * s;
  if (k > 0) log_mag += 0.5 * k * std::log(kPi) + k * std::log(rho);
  int sign = lag.sign;
  if (j <= r && (r - j) % 2 == 1) sign = -sign;
  return sign * std::exp(log_mag);
}

std::complex<double> complex_hermite_weighted(int j, int r, std::complex<double> z) {
  const double rho = std::abs(z);
  const double radial = complex_hermite_radial(j, r, rho);
  if (radial == 0.0 || j == r) return {radial, 0.0};
  const double phase = (j - r) * std::arg(z);
  return std::polar(radial, phase);
}

double regularized_lower_gamma(int j, double s) {
  if (j < 0) fail(ErrorCode::kDomain, "regularized_lower_gamma: j must be >= 0");
  if (!(s >= 0.0)) fail(ErrorCode::kDomain, "regularized_lower_gamma: s must be >= 0");
  if (s == 0.0) return 0.0;
  const double a = j + 1.0;
  if (std::isinf(s)) return 1.0;
  if (s < a) {
    // P = e^{-s} s^a / Gamma(a+1) * sum_n s^n / ((a+1)...(a+n))
    double term = 1.0;
    double sum = 1.0;
    for (int n = 1; n < 10000; ++n) {
      term *= s / (a + n);
      sum += term;
      if (term < 1e-17 * sum) break;
    }
    return std::exp(-s + a * std::log(s) - std::lgamma(a + 1.0)) * sum;
  }
  // Q = e^{-s} sum_{k<=j} s^k / k!, every term below one.
  const double log_s = std::log(s);
  double q = 0.0;
  for (int k = 0; k <= j; ++k) q += std::exp(-s + k * log_s - std::lgamma(k + 1.0));
  return 1.0 - q;
}

}  // namespace whens
