// Copyright 2026 The whens Authors
// SPDX-License-Identifier: Apache-2.0

#include "whens/ensembles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "whens/error.hpp"
#include "whens/specfun.hpp"

namespace whens {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTieTolerance = 1e-12;

double cutoff_radius(std::size_t max_index, int r) {
  const double n = 2.0 * (static_cast<double>(max_index) + r);
  return std::sqrt((n + 60.0 + 12.0 * std::sqrt(n + 1.0)) / kPi);
}

// Smallest R on [0, hi] with outside(R) <= target, assuming outside decreasing.
template <class F>
double bisect_radius(F&& outside, double hi, double target) {
  double lo = 0.0;
  while (outside(hi) > target) hi *= 1.5;
  for (int it = 0; it < 60 && hi - lo > 1e-10 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (outside(mid) > target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;
}

}  // namespace

IndexSet::IndexSet(std::vector<std::size_t> values) : values_(std::move(values)) {
  std::sort(values_.begin(), values_.end());
  if (std::adjacent_find(values_.begin(), values_.end()) != values_.end()) {
    fail(ErrorCode::kInvalidArgument, "IndexSet: duplicate entries");
  }
}

IndexSet IndexSet::range(std::size_t n) {
  std::vector<std::size_t> v(n);
  std::iota(v.begin(), v.end(), 0);
  return IndexSet(std::move(v));
}

bool IndexSet::contains(std::size_t v) const { return std::binary_search(values_.begin(), values_.end(), v); }

IndexSet symmetric_difference(const IndexSet& a, const IndexSet& b) {
  std::vector<std::size_t> out;
  std::set_symmetric_difference(a.values().begin(), a.values().end(), b.values().begin(), b.values().end(),
                                std::back_inserter(out));
  return IndexSet(std::move(out));
}

ProjectionKernel ProjectionKernel::spectral(const SpectralDecomposition& s, const ToeplitzMatrix& t,
                                            const IndexSet& positions) {
  const auto cols = s.eigenvectors.cols();
  for (std::size_t p : positions.values()) {
    if (static_cast<std::ptrdiff_t>(p) >= cols) {
      fail(ErrorCode::kInvalidArgument, "ProjectionKernel: position " + std::to_string(p) + " beyond spectrum");
    }
  }
  ProjectionKernel k;
  k.family_ = Family::kSpectral;
  k.index_set_ = positions;
  k.window_ = t.window;
  k.coeffs_.resize(s.eigenvectors.rows(), static_cast<std::ptrdiff_t>(positions.size()));
  for (std::size_t i = 0; i < positions.size(); ++i) {
    k.coeffs_.col(static_cast<std::ptrdiff_t>(i)) = s.eigenvectors.col(static_cast<std::ptrdiff_t>(positions.values()[i]));
  }
  k.descriptor_ = "spectral:" + t.window.descriptor() + "@" + t.domain.descriptor() + ",M=" + std::to_string(t.size) +
                  ",rank=" + std::to_string(positions.size());
  return k;
}

ProjectionKernel ProjectionKernel::pure_poly(int r, const IndexSet& j) {
  if (r < 0) fail(ErrorCode::kInvalidArgument, "pure_poly: r must be >= 0");
  ProjectionKernel k;
  k.family_ = Family::kPurePoly;
  k.level_ = r;
  k.index_set_ = j;
  std::ostringstream os;
  os << "poly:r=" << r << ",J=";
  if (j.values() == IndexSet::range(j.size()).values()) {
    os << "0.." << j.size() - 1;
  } else {
    for (std::size_t i = 0; i < j.size(); ++i) os << (i ? ";" : "") << j.values()[i];
  }
  k.descriptor_ = os.str();
  return k;
}

void ProjectionKernel::evaluate(PhasePoint p, std::span<cplx> out) const {
  if (out.size() != rank()) fail(ErrorCode::kInvalidArgument, "ProjectionKernel::evaluate: output size mismatch");
  if (family_ == Family::kPurePoly) {
    const cplx z = p.z();
    const double rho = std::abs(z);
    const double theta = std::arg(z);
    for (std::size_t i = 0; i < rank(); ++i) {
      const int j = static_cast<int>(index_set_.values()[i]);
      const double radial = complex_hermite_radial(j, level_, rho);
      out[i] = radial == 0.0 ? cplx{0.0, 0.0} : std::polar(radial, (j - level_) * theta);
    }
    return;
  }
  std::vector<cplx> col(static_cast<std::size_t>(coeffs_.rows()));
  stft_window_column(window_, p, col);
  const Eigen::Map<const Eigen::VectorXcd> v(col.data(), coeffs_.rows());
  for (std::size_t i = 0; i < rank(); ++i) out[i] = coeffs_.col(static_cast<std::ptrdiff_t>(i)).transpose() * v;
}

std::vector<cplx> ProjectionKernel::evaluate(PhasePoint p) const {
  std::vector<cplx> out(rank());
  evaluate(p, out);
  return out;
}

cplx ProjectionKernel::operator()(PhasePoint p, PhasePoint q) const {
  const std::vector<cplx> a = evaluate(p);
  const std::vector<cplx> b = evaluate(q);
  cplx s{0.0, 0.0};
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * std::conj(b[i]);
  return s;
}

double ProjectionKernel::intensity(PhasePoint p) const {
  const std::vector<cplx> a = evaluate(p);
  double s = 0.0;
  for (const cplx& v : a) s += std::norm(v);
  return s;
}

double ProjectionKernel::envelope_radius(double tol) const {
  if (rank() == 0) return 0.0;
  const double n = static_cast<double>(rank());
  const double target = tol * n;
  if (family_ == Family::kPurePoly) {
    const double hi = cutoff_radius(index_set_.max(), level_);
    return bisect_radius(
        [&](double R) {
          if (R <= 0.0) return n;
          double out = 0.0;
          for (std::size_t j : index_set_.values()) out += 1.0 - mu_radial(level_, static_cast<int>(j), R);
          return out;
        },
        hi, target);
  }
  const auto M = static_cast<std::size_t>(coeffs_.rows());
  const double hi = cutoff_radius(M, static_cast<int>(window_.size()));
  return bisect_radius(
      [&](double R) {
        if (R <= 0.0) return n;
        const Eigen::MatrixXcd a = radial_gram(window_, 0.0, R, M);
        return n - (coeffs_.adjoint() * a * coeffs_).trace().real();
      },
      hi, target);
}

ProjectionKernel finite_wh_kernel(const SpectralDecomposition& s, const ToeplitzMatrix& t) {
  const std::size_t n = n_omega(t.domain);
  if (static_cast<std::ptrdiff_t>(n) > s.eigenvalues.size() || !(s.eigenvalues(static_cast<std::ptrdiff_t>(n) - 1) > 0.0)) {
    fail(ErrorCode::kRankDeficient,
         "finite_wh_kernel: fewer than n_omega = " + std::to_string(n) + " positive eigenvalues");
  }
  return ProjectionKernel::spectral(s, t, IndexSet::range(n));
}

ProjectionKernel pure_poly_kernel(int r, std::size_t N) {
  if (N < 1) fail(ErrorCode::kInvalidArgument, "pure_poly_kernel: N must be >= 1");
  return ProjectionKernel::pure_poly(r, IndexSet::range(N));
}

PhasePoint IntensityGrid::point(std::size_t k, std::size_t i) const {
  const double x = nx > 1 ? x0 + (x1 - x0) * static_cast<double>(k) / static_cast<double>(nx - 1) : x0;
  const double xi = nxi > 1 ? xi0 + (xi1 - xi0) * static_cast<double>(i) / static_cast<double>(nxi - 1) : xi0;
  return {x, xi};
}

IntensityGrid intensity_grid(const ProjectionKernel& k, double x0, double x1, double xi0, double xi1,
                             std::size_t nx, std::size_t nxi) {
  if (nx < 1 || nxi < 1) fail(ErrorCode::kInvalidArgument, "intensity_grid: empty grid");
  if (!(x0 <= x1) || !(xi0 <= xi1)) fail(ErrorCode::kInvalidArgument, "intensity_grid: inverted box");
  IntensityGrid g{x0, x1, xi0, xi1, nx, nxi, std::vector<double>(nx * nxi)};
  const auto total = static_cast<std::ptrdiff_t>(nx * nxi);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t idx = 0; idx < total; ++idx) {
    const auto u = static_cast<std::size_t>(idx);
    g.values[u] = k.intensity(g.point(u % nx, u / nx));
  }
  return g;
}

double l1_deviation_spectral(const SpectralDecomposition& s, const ToeplitzMatrix& t, const IndexSet& I) {
  const auto m = s.eigenvalues.size();
  double outside = std::max(t.tail_mass, 0.0);
  for (std::ptrdiff_t j = 0; j < m; ++j) {
    if (!I.contains(static_cast<std::size_t>(j))) outside += s.eigenvalues(j);
  }
  for (std::size_t p : I.values()) {
    if (static_cast<std::ptrdiff_t>(p) >= m) fail(ErrorCode::kInvalidArgument, "l1_deviation: position beyond spectrum");
  }
  return static_cast<double>(I.size()) - t.domain.measure() + 2.0 * outside;
}

double l1_deviation_poly(int r, std::size_t N) {
  if (N < 1) fail(ErrorCode::kInvalidArgument, "l1_deviation_poly: N must be >= 1");
  const double R = std::sqrt(static_cast<double>(N) / kPi);
  const std::vector<double> mu = mu_radial_all(r, N, R);
  double inside = 0.0;
  for (double v : mu) inside += v;
  return 2.0 * (static_cast<double>(N) - inside);
}

IndexSet poly_index_set_for_area(int r, std::size_t N, double area, std::vector<std::string>* warnings) {
  if (N < 1) fail(ErrorCode::kInvalidArgument, "poly_index_set: N must be >= 1");
  if (!(area > 0.0)) fail(ErrorCode::kDomain, "poly_index_set: area must be positive");
  const std::size_t M = std::max(2 * N, N + 64);
  const std::vector<double> mu = mu_radial_all(r, M, std::sqrt(area / kPi));

  std::vector<std::size_t> order(M);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return mu[a] > mu[b]; });
  // Within each tie group (spread <= tolerance from its lead) smaller j first.
  std::size_t begin = 0;
  while (begin < M) {
    std::size_t end = begin + 1;
    while (end < M && mu[order[begin]] - mu[order[end]] <= kTieTolerance) ++end;
    std::sort(order.begin() + static_cast<std::ptrdiff_t>(begin), order.begin() + static_cast<std::ptrdiff_t>(end));
    if (warnings && begin < N && end > N) {
      std::ostringstream os;
      os << "poly_index_set: tie at the cut (r=" << r << ", N=" << N << ", mu=" << mu[order[begin]]
         << "); smaller indices kept";
      warnings->push_back(os.str());
    }
    begin = end;
  }
  return IndexSet(std::vector<std::size_t>(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(N)));
}

IndexSet poly_index_set(int r, std::size_t N, std::vector<std::string>* warnings) {
  return poly_index_set_for_area(r, N, static_cast<double>(N), warnings);
}

double trace_distance_poly(int r, std::size_t N) {
  return static_cast<double>(symmetric_difference(poly_index_set(r, N), IndexSet::range(N)).size());
}

double mu_crossing_radius(int r, int j0, int j1, double lo, double hi, double tol) {
  if (!(lo > 0.0) || !(hi > lo)) fail(ErrorCode::kDomain, "mu_crossing_radius: requires 0 < lo < hi");
  auto diff = [&](double R) { return mu_radial(r, j0, R) - mu_radial(r, j1, R); };
  double flo = diff(lo);
  const double fhi = diff(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0) == (fhi > 0)) fail(ErrorCode::kDomain, "mu_crossing_radius: no sign change on the bracket");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = diff(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<ComparisonRow> compare_sweep(int r, std::span<const std::size_t> Ns) {
  std::vector<ComparisonRow> rows;
  for (std::size_t N : Ns) {
    ComparisonRow row;
    row.N = N;
    row.r = r;
    row.symdiff = trace_distance_poly(r, N);
    row.sqrt_n = std::sqrt(static_cast<double>(N));
    row.ratio = row.symdiff / row.sqrt_n;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace whens
