// Copyright 2026 The whens Authors
// SPDX-License-Identifier: Apache-2.0

#include "whens/sampling.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <ostream>

#include "whens/error.hpp"
#include "whens/rng.hpp"
#include "whens/specfun.hpp"
#include "whens/toeplitz.hpp"

namespace whens {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kPanels = 4096;
constexpr std::size_t kPanelOrder = 20;

PointConfiguration sample_with_envelope(const ProjectionKernel& k, double radius, std::uint64_t seed,
                                        std::uint64_t index) {
  const std::size_t n = k.rank();
  if (n < 1) fail(ErrorCode::kInvalidArgument, "sample_dpp: kernel rank must be >= 1");
  PointConfiguration out;
  out.seed = seed;
  out.sample_index = index;
  out.kernel = k.descriptor();
  out.points.reserve(n);

  CounterRng rng(stream_key(seed, index));
  std::vector<Eigen::VectorXcd> basis;  // orthonormal span of phi at chosen points
  basis.reserve(n);
  Eigen::VectorXcd phi(static_cast<std::ptrdiff_t>(n));
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t rejected = 0;
    while (true) {
      const double rho = radius * std::sqrt(rng.uniform());
      const double theta = 2.0 * kPi * rng.uniform();
      const PhasePoint p{rho * std::cos(theta), rho * std::sin(theta)};
      k.evaluate(p, std::span<cplx>(phi.data(), n));
      for (const auto& e : basis) phi -= e.dot(phi) * e;
      const double cond = phi.squaredNorm();
      ++out.stats.proposals;
      if (rng.uniform() < cond) {
        out.points.push_back(p);
        basis.push_back(phi / std::sqrt(cond));
        ++out.stats.accepted;
        break;
      }
      if (++rejected >= kRejectionCap) {
        fail(ErrorCode::kRejectionCap, "sample_dpp: rejection cap reached at point " + std::to_string(i + 1) + " of " +
                                           std::to_string(n) + " after " + std::to_string(out.stats.proposals) +
                                           " proposals, " + std::to_string(out.stats.accepted) + " accepted");
      }
    }
  }
  return out;
}

std::shared_ptr<const RadialLaw> cached_law(int r, int j) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::shared_ptr<const RadialLaw>> cache;
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find({r, j});
    if (it != cache.end()) return it->second;
  }
  auto law = std::make_shared<const RadialLaw>(r, j);
  std::lock_guard<std::mutex> lock(mutex);
  return cache.emplace(std::make_pair(r, j), std::move(law)).first->second;
}

std::vector<std::shared_ptr<const RadialLaw>> laws_for(int r, const IndexSet& J) {
  std::vector<std::shared_ptr<const RadialLaw>> laws;
  for (std::size_t j : J.values()) laws.push_back(cached_law(r, static_cast<int>(j)));
  return laws;
}

}  // namespace

PointConfiguration sample_dpp(const ProjectionKernel& k, std::uint64_t seed, std::uint64_t sample_index) {
  return sample_with_envelope(k, k.envelope_radius(), seed, sample_index);
}

std::vector<PointConfiguration> sample_dpp_batch(const ProjectionKernel& k, std::uint64_t seed, std::size_t count) {
  const double radius = k.envelope_radius();
  std::vector<PointConfiguration> out(count);
  const auto total = static_cast<std::ptrdiff_t>(count);
  std::string error;
  ErrorCode code = ErrorCode::kNumerical;
  bool failed = false;
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t i = 0; i < total; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = sample_with_envelope(k, radius, seed, static_cast<std::uint64_t>(i));
    } catch (const Error& e) {
#pragma omp critical(whens_batch_error)
      {
        if (!failed) {
          failed = true;
          code = e.code();
          error = e.what();
        }
      }
    }
  }
  if (failed) fail(code, error);
  return out;
}

RadialLaw::RadialLaw(int r, int j) : r_(r), j_(j) {
  if (r < 0 || j < 0) fail(ErrorCode::kDomain, "RadialLaw: r and j must be >= 0");
  log_norm_ = std::log(2.0) + (j - r + 1) * std::log(kPi) + std::lgamma(r + 1.0) - std::lgamma(j + 1.0);
  const double n = 2.0 * (j + r);
  x_max_ = std::sqrt((n + 60.0 + 12.0 * std::sqrt(n + 1.0)) / kPi);
  x_.resize(kPanels + 1);
  cdf_.resize(kPanels + 1);
  const double h = x_max_ / static_cast<double>(kPanels);
  x_[0] = 0.0;
  cdf_[0] = 0.0;
  for (std::size_t k = 1; k <= kPanels; ++k) {
    x_[k] = h * static_cast<double>(k);
    cdf_[k] = cdf_[k - 1] + panel_integral(x_[k - 1], x_[k]);
  }
}

double RadialLaw::density(double x) const {
  if (!(x > 0.0)) return 0.0;
  const double s = kPi * x * x;
  const ScaledValue lag = laguerre_scaled(r_, j_ - r_, s);
  if (lag.sign == 0) return 0.0;
  return std::exp(log_norm_ + (2.0 * (j_ - r_) + 1.0) * std::log(x) + 2.0 * lag.log_abs - s);
}

double RadialLaw::density_squared(double u) const {
  if (u < 0.0) return 0.0;
  const ScaledValue lag = laguerre_scaled(r_, j_ - r_, kPi * u);
  if (lag.sign == 0) return 0.0;
  if (u == 0.0) return j_ == r_ ? std::exp(log_norm_ - std::log(2.0) + 2.0 * lag.log_abs) : 0.0;
  return std::exp(log_norm_ - std::log(2.0) + (j_ - r_) * std::log(u) + 2.0 * lag.log_abs - kPi * u);
}

double RadialLaw::panel_integral(double a, double b) const {
  if (!(b > a)) return 0.0;
  return gauss_legendre(kPanelOrder, a, b).integrate([&](double x) { return density(x); });
}

double RadialLaw::cdf(double x) const {
  if (!(x > 0.0)) return 0.0;
  if (r_ == 0) return regularized_lower_gamma(j_, kPi * x * x);
  if (x >= x_max_) return cdf_.back();
  const double h = x_max_ / static_cast<double>(kPanels);
  const auto k = std::min(static_cast<std::size_t>(x / h), kPanels - 1);
  return cdf_[k] + panel_integral(x_[k], x);
}

double RadialLaw::inverse_cdf(double u) const {
  if (!(u > 0.0)) return 0.0;
  const double total = r_ == 0 ? 1.0 : cdf_.back();
  if (u >= total) return x_max_;
  // Panel bracket from the table, then safeguarded Newton on the exact CDF.
  auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  std::size_t k = it == cdf_.end() ? kPanels : static_cast<std::size_t>(it - cdf_.begin());
  k = std::clamp<std::size_t>(k, 1, kPanels);
  double a = x_[k - 1];
  double b = x_[k];
  double fa = cdf(a) - u;
  double fb = cdf(b) - u;
  // The analytic r = 0 CDF can disagree with the table by rounding; widen.
  while (fa > 0.0 && a > 0.0) {
    a = std::max(0.0, a - (b - a));
    fa = cdf(a) - u;
  }
  while (fb < 0.0 && b < x_max_) {
    b = std::min(x_max_, b + (b - a));
    fb = cdf(b) - u;
  }
  double x = fb - fa > 0.0 ? a + (b - a) * (-fa) / (fb - fa) : 0.5 * (a + b);
  for (int it_count = 0; it_count < 200; ++it_count) {
    const double fx = cdf(x) - u;
    if (fx == 0.0) return x;
    if (fx < 0.0) {
      a = x;
    } else {
      b = x;
    }
    const double d = density(x);
    double next = d > 0.0 ? x - fx / d : 0.5 * (a + b);
    if (!(next > a && next < b)) next = 0.5 * (a + b);
    if (std::abs(next - x) <= 1e-12 * std::max(1.0, x) || b - a <= 1e-12 * std::max(1.0, x)) return next;
    x = next;
  }
  return x;
}

std::vector<double> sample_kostlan(int r, const IndexSet& J, std::uint64_t seed, std::uint64_t index) {
  const auto laws = laws_for(r, J);
  CounterRng rng(stream_key(seed, index));
  std::vector<double> out;
  out.reserve(laws.size());
  for (const auto& law : laws) out.push_back(law->inverse_cdf(rng.uniform()));
  return out;
}

double hole_probability(int r, const IndexSet& J, double R) {
  if (!(R > 0.0)) fail(ErrorCode::kDomain, "hole_probability: R must be positive");
  double p = 1.0;
  for (const auto& law : laws_for(r, J)) {
    const double tail = 1.0 - law->cdf(R);
    const double bridge = 1.0 - mu_radial(r, law->index(), R);
    if (std::abs(tail - bridge) > 1e-8) {
      fail(ErrorCode::kNumerical, "hole_probability: radial tail " + std::to_string(tail) +
                                      " disagrees with 1 - mu = " + std::to_string(bridge));
    }
    p *= tail;
  }
  return p;
}

double density_consistency(int r, int j, std::size_t grid) {
  const RadialLaw law(r, j);
  double worst = 0.0;
  for (std::size_t i = 0; i < grid; ++i) {
    const double x = law.support_end() * static_cast<double>(i) / static_cast<double>(grid - 1);
    worst = std::max(worst, std::abs(2.0 * x * law.density_squared(x * x) - law.density(x)));
  }
  return worst;
}

RadiiReport radii_distribution_test(const std::vector<std::vector<double>>& radii, int r, const IndexSet& J,
                                    std::size_t annuli) {
  if (radii.size() < 1000) {
    fail(ErrorCode::kInsufficientSamples,
         "radii_distribution_test: " + std::to_string(radii.size()) + " configurations, need at least 1000");
  }
  if (annuli < 2) fail(ErrorCode::kInvalidArgument, "radii_distribution_test: need at least 2 annuli");
  if (J.empty()) fail(ErrorCode::kInvalidArgument, "radii_distribution_test: empty index set");
  const auto laws = laws_for(r, J);
  const double n = static_cast<double>(J.size());
  double top = 0.0;
  for (const auto& law : laws) top = std::max(top, law->support_end());
  auto expected_inside = [&](double R) {
    double s = 0.0;
    for (const auto& law : laws) s += law->cdf(R);
    return s;
  };

  // Boundaries of equal predicted mass.
  std::vector<double> edges(annuli + 1, 0.0);
  edges[annuli] = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k < annuli; ++k) {
    const double target = n * static_cast<double>(k) / static_cast<double>(annuli);
    double lo = edges[k - 1];
    double hi = top;
    for (int it = 0; it < 100; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (expected_inside(mid) < target) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    edges[k] = 0.5 * (lo + hi);
  }

  // p[j][k]: probability that Y_j falls in annulus k.
  std::vector<std::vector<double>> p(laws.size(), std::vector<double>(annuli));
  for (std::size_t j = 0; j < laws.size(); ++j) {
    double prev = 0.0;
    for (std::size_t k = 0; k < annuli; ++k) {
      const double c = k + 1 == annuli ? 1.0 : laws[j]->cdf(edges[k + 1]);
      p[j][k] = std::max(c - prev, 0.0);
      prev = c;
    }
  }

  std::vector<double> observed(annuli, 0.0);
  for (const auto& config : radii) {
    if (config.size() != J.size()) {
      fail(ErrorCode::kInvalidArgument, "radii_distribution_test: configuration size differs from |J|");
    }
    for (double x : config) {
      const auto k = static_cast<std::size_t>(std::upper_bound(edges.begin() + 1, edges.end() - 1, x) - (edges.begin() + 1));
      observed[k] += 1.0;
    }
  }

  const double S = static_cast<double>(radii.size());
  RadiiReport report;
  report.configurations = radii.size();
  report.all_pass = true;
  for (std::size_t k = 0; k < annuli; ++k) {
    double mean = 0.0;
    double var = 0.0;
    for (std::size_t j = 0; j < laws.size(); ++j) {
      mean += p[j][k];
      var += p[j][k] * (1.0 - p[j][k]);
    }
    AnnulusRow row;
    row.lo = edges[k];
    row.hi = edges[k + 1];
    row.expected = S * mean;
    row.observed = observed[k];
    row.sigma = std::sqrt(S * var);
    row.pass = std::abs(row.observed - row.expected) <= 3.0 * row.sigma;
    report.all_pass = report.all_pass && row.pass;
    report.rows.push_back(row);
  }

  // Counts sum to |J| per configuration, so the last annulus is dropped.
  const auto d = static_cast<std::ptrdiff_t>(annuli - 1);
  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(d, d);
  Eigen::VectorXd diff(d);
  for (std::ptrdiff_t k = 0; k < d; ++k) {
    diff(k) = report.rows[static_cast<std::size_t>(k)].observed - report.rows[static_cast<std::size_t>(k)].expected;
    for (std::ptrdiff_t l = 0; l < d; ++l) {
      double c = 0.0;
      for (std::size_t j = 0; j < laws.size(); ++j) {
        const double pk = p[j][static_cast<std::size_t>(k)];
        const double pl = p[j][static_cast<std::size_t>(l)];
        c += (k == l ? pk : 0.0) - pk * pl;
      }
      cov(k, l) = S * c;
    }
  }
  report.chi_square = diff.dot(cov.ldlt().solve(diff));
  report.dof = static_cast<std::size_t>(d);
  report.p_value = boost::math::gamma_q(0.5 * static_cast<double>(d), 0.5 * report.chi_square);
  return report;
}

RadiiReport radii_distribution_test(const std::vector<PointConfiguration>& samples, int r, const IndexSet& J,
                                    std::size_t annuli) {
  std::vector<std::vector<double>> radii;
  radii.reserve(samples.size());
  for (const auto& s : samples) {
    std::vector<double> v;
    v.reserve(s.points.size());
    for (const auto& pt : s.points) v.push_back(std::hypot(pt.x, pt.xi));
    radii.push_back(std::move(v));
  }
  if (radii.size() < 1000) {
    fail(ErrorCode::kInsufficientSamples,
         "radii_distribution_test: " + std::to_string(radii.size()) + " configurations, need at least 1000");
  }
  return radii_distribution_test(radii, r, J, annuli);
}

void write_samples_csv(std::ostream& os, const std::vector<PointConfiguration>& samples) {
  os << "sample_id,x,xi\n";
  char buf[96];
  for (const auto& s : samples) {
    for (const auto& p : s.points) {
      std::snprintf(buf, sizeof buf, "%llu,%.17g,%.17g\n", static_cast<unsigned long long>(s.sample_index), p.x, p.xi);
      os << buf;
    }
  }
}

void write_radii_report_csv(std::ostream& os, const RadiiReport& report) {
  os << "annulus_lo,annulus_hi,expected,observed,sigma,pass\n";
  char buf[192];
  for (const auto& row : report.rows) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%d\n", row.lo, row.hi, row.expected, row.observed,
                  row.sigma, row.pass ? 1 : 0);
    os << buf;
  }
}

}  // namespace whens
