// Copyright 2026 The whens Authors
// SPDX-License-Identifier: Apache-2.0

#include "whens/phasespace.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include "whens/error.hpp"
#include "whens/specfun.hpp"

namespace whens {

namespace {

constexpr double kPi = std::numbers::pi;

// Half-width beyond which h_0 .. h_{max_index} are below ~1e-27.
double hermite_support(std::size_t max_index) {
  return std::sqrt((2.0 * static_cast<double>(max_index) + 1.0) / (2.0 * kPi)) + 4.5;
}

int parse_int(const std::string& s, const std::string& what) {
  std::size_t pos = 0;
  int v = 0;
  try {
    v = std::stoi(s, &pos);
  } catch (const std::exception&) {
    fail(ErrorCode::kParse, "invalid integer in " + what + ": '" + s + "'");
  }
  if (pos != s.size()) fail(ErrorCode::kParse, "invalid integer in " + what + ": '" + s + "'");
  return v;
}

}  // namespace

WindowSpec WindowSpec::from_coefficients(std::vector<cplx> coeffs) {
  double norm2 = 0.0;
  for (const cplx& c : coeffs) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      fail(ErrorCode::kInvalidArgument, "window: non-finite coefficient");
    }
    norm2 += std::norm(c);
  }
  if (!(norm2 > 0.0)) fail(ErrorCode::kInvalidArgument, "window: zero coefficient vector");
  WindowSpec w;
  w.applied_scale_ = 1.0 / std::sqrt(norm2);
  for (cplx& c : coeffs) c *= w.applied_scale_;
  w.coeffs_ = std::move(coeffs);
  w.descriptor_ = "coeffs:" + std::to_string(w.coeffs_.size());
  return w;
}

WindowSpec WindowSpec::hermite(int r) {
  if (r < 0) fail(ErrorCode::kInvalidArgument, "window: hermite index must be >= 0");
  std::vector<cplx> c(static_cast<std::size_t>(r) + 1, cplx{0.0, 0.0});
  c.back() = 1.0;
  WindowSpec w = from_coefficients(std::move(c));
  w.descriptor_ = "hermite:" + std::to_string(r);
  return w;
}

WindowSpec WindowSpec::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIo, "window: cannot open '" + path + "'");
  std::map<int, cplx> entries;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    int r = 0;
    double re = 0.0;
    double im = 0.0;
    if (!(ls >> r)) continue;  // blank line
    if (!(ls >> re >> im) || r < 0) {
      fail(ErrorCode::kParse, path + ":" + std::to_string(line_no) + ": expected 'r real imag'");
    }
    std::string extra;
    if (ls >> extra) fail(ErrorCode::kParse, path + ":" + std::to_string(line_no) + ": trailing text");
    if (!entries.emplace(r, cplx{re, im}).second) {
      fail(ErrorCode::kParse, path + ":" + std::to_string(line_no) + ": duplicate index " + std::to_string(r));
    }
  }
  if (entries.empty()) fail(ErrorCode::kParse, "window: '" + path + "' has no coefficients");
  std::vector<cplx> c(static_cast<std::size_t>(entries.rbegin()->first) + 1, cplx{0.0, 0.0});
  for (const auto& [r, v] : entries) c[static_cast<std::size_t>(r)] = v;
  WindowSpec w = from_coefficients(std::move(c));
  w.descriptor_ = "file:" + path;
  return w;
}

WindowSpec WindowSpec::parse(const std::string& descriptor) {
  const auto colon = descriptor.find(':');
  if (colon == std::string::npos) fail(ErrorCode::kParse, "window descriptor needs 'kind:value': " + descriptor);
  const std::string kind = descriptor.substr(0, colon);
  const std::string value = descriptor.substr(colon + 1);
  if (kind == "hermite") return hermite(parse_int(value, "window descriptor"));
  if (kind == "file") return load(value);
  fail(ErrorCode::kParse, "unknown window kind '" + kind + "'");
}

int WindowSpec::pure_index() const {
  int idx = -1;
  for (std::size_t r = 0; r < coeffs_.size(); ++r) {
    if (coeffs_[r] != cplx{0.0, 0.0}) {
      if (idx >= 0) return -1;
      idx = static_cast<int>(r);
    }
  }
  return idx;
}

cplx stft_hermite(int j, int r, PhasePoint p) {
  const cplx phase = std::polar(1.0, -kPi * p.x * p.xi);
  return phase * complex_hermite_weighted(j, r, std::conj(p.z()));
}

cplx stft_window(const WindowSpec& g, int j, PhasePoint p) {
  cplx s{0.0, 0.0};
  const auto c = g.coeffs();
  for (std::size_t r = 0; r < c.size(); ++r) {
    if (c[r] == cplx{0.0, 0.0}) continue;
    s += std::conj(c[r]) * stft_hermite(j, static_cast<int>(r), p);
  }
  return s;
}

void stft_window_column(const WindowSpec& g, PhasePoint p, std::span<cplx> out) {
  std::fill(out.begin(), out.end(), cplx{0.0, 0.0});
  const double rho = std::abs(p.z());
  const double theta = std::arg(std::conj(p.z()));
  const cplx gauge = std::polar(1.0, -kPi * p.x * p.xi);
  const auto c = g.coeffs();
  for (std::size_t r = 0; r < c.size(); ++r) {
    if (c[r] == cplx{0.0, 0.0}) continue;
    const cplx cr = std::conj(c[r]) * gauge;
    const int ri = static_cast<int>(r);
    for (std::size_t j = 0; j < out.size(); ++j) {
      const int ji = static_cast<int>(j);
      const double radial = complex_hermite_radial(ji, ri, rho);
      if (radial == 0.0) continue;
      out[j] += cr * std::polar(radial, (ji - ri) * theta);
    }
  }
}

cplx hermite_series(std::span<const cplx> coeffs, double t) {
  if (coeffs.empty()) return {0.0, 0.0};
  const std::vector<double> h = hermite_functions(static_cast<int>(coeffs.size()), t);
  cplx s{0.0, 0.0};
  for (std::size_t r = 0; r < coeffs.size(); ++r) s += coeffs[r] * h[r];
  return s;
}

NumericStft stft_numeric_fn(const std::function<cplx(double)>& g,
                            const std::function<cplx(double)>& f, PhasePoint p, double lo,
                            double hi, std::size_t order, double tolerance) {
  NumericStft out;
  if (!(lo < hi)) {
    out.value = 0.0;
    return out;
  }
  auto integrate = [&](std::size_t n) {
    const QuadratureRule rule = gauss_legendre(n, lo, hi);
    cplx s{0.0, 0.0};
    for (std::size_t i = 0; i < rule.size(); ++i) {
      const double t = rule.nodes[i];
      s += rule.weights[i] * f(t) * std::conj(g(t - p.x)) * std::polar(1.0, -2.0 * kPi * p.xi * t);
    }
    return s;
  };
  const cplx coarse = integrate(order);
  const cplx fine = integrate(2 * order);
  out.value = fine;
  out.error_estimate = std::abs(fine - coarse);
  out.accurate = out.error_estimate <= tolerance;
  return out;
}

NumericStft stft_numeric(std::span<const cplx> g, std::span<const cplx> f, PhasePoint p,
                         double tolerance) {
  const std::vector<cplx> gv(g.begin(), g.end());
  const std::vector<cplx> fv(f.begin(), f.end());
  const double lf = hermite_support(fv.empty() ? 0 : fv.size() - 1);
  const double lg = hermite_support(gv.empty() ? 0 : gv.size() - 1);
  const double lo = std::max(-lf, p.x - lg);
  const double hi = std::min(lf, p.x + lg);
  const double width = std::max(hi - lo, 0.0);
  const auto order = static_cast<std::size_t>(
      64 + 2 * (fv.size() + gv.size()) + std::ceil(3.0 * std::abs(p.xi) * width));
  return stft_numeric_fn([&](double t) { return hermite_series(gv, t); },
                         [&](double t) { return hermite_series(fv, t); }, p, lo, hi, order,
                         tolerance);
}

cplx reproducing_kernel(const WindowSpec& g, PhasePoint p, PhasePoint q) {
  // <pi(q) g, pi(p) g> = V_g(pi(q) g)(p) = e^{-2 pi i x_q (xi_p - xi_q)} V_g g(p - q).
  const PhasePoint d = p - q;
  const auto c = g.coeffs();
  cplx vgg{0.0, 0.0};
  for (std::size_t r = 0; r < c.size(); ++r) {
    if (c[r] == cplx{0.0, 0.0}) continue;
    vgg += c[r] * stft_window(g, static_cast<int>(r), d);
  }
  return std::polar(1.0, -2.0 * kPi * q.x * (p.xi - q.xi)) * vgg;
}

cplx gauge_renormalize(cplx k, PhasePoint p, PhasePoint q) {
  return std::polar(1.0, kPi * (q.x * q.xi - p.x * p.xi)) * k;
}

WindowSpec metaplectic_rotate(const WindowSpec& g, double theta) {
  std::vector<cplx> c(g.coeffs().begin(), g.coeffs().end());
  for (std::size_t r = 0; r < c.size(); ++r) c[r] *= std::polar(1.0, static_cast<double>(r) * theta);
  WindowSpec out = WindowSpec::from_coefficients(std::move(c));
  out.set_descriptor(g.descriptor());
  return out;
}

PhasePoint rotate(PhasePoint p, double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return {c * p.x - s * p.xi, s * p.x + c * p.xi};
}

}  // namespace whens
