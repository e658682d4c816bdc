// Copyright 2026 The whens Authors
// SPDX-License-Identifier: Apache-2.0

#include "whens/toeplitz.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <numbers>
#include <ostream>
#include <sstream>

#include "whens/error.hpp"
#include "whens/specfun.hpp"

namespace whens {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kChunk = 4096;
constexpr double kTieTolerance = 1e-12;

// |H_{j,r}|^2 e^{-s} oscillates for s <= (sqrt j + sqrt r)^2 <= 2 (j + r) and
// decays like a Gamma tail beyond; past this radius the mass is negligible.
double radial_cutoff(std::size_t max_index, std::size_t r) {
  const double n = 2.0 * (static_cast<double>(max_index) + static_cast<double>(r));
  return std::sqrt((n + 60.0 + 12.0 * std::sqrt(n + 1.0)) / kPi);
}

std::vector<std::size_t> support(const WindowSpec& g) {
  std::vector<std::size_t> s;
  for (std::size_t r = 0; r < g.size(); ++r) {
    if (g.coeffs()[r] != cplx{0.0, 0.0}) s.push_back(r);
  }
  return s;
}

// Fills rows [begin, end) of b with sqrt(w_n) V_g h_j(z_n).
void fill_basis_rows(const WindowSpec& g, const Quadrature2D& q, std::size_t begin, std::size_t end,
                     Eigen::MatrixXcd& b) {
  const auto rows = static_cast<std::ptrdiff_t>(end - begin);
  const std::size_t m = static_cast<std::size_t>(b.cols());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < rows; ++i) {
    std::vector<cplx> col(m);
    const std::size_t n = begin + static_cast<std::size_t>(i);
    stft_window_column(g, q.nodes[n], col);
    const double sw = std::sqrt(q.weights[n]);
    for (std::size_t j = 0; j < m; ++j) b(i, static_cast<std::ptrdiff_t>(j)) = sw * col[j];
  }
}

Eigen::MatrixXcd assemble_generic(const WindowSpec& g, const Quadrature2D& q, std::size_t M) {
  const auto m = static_cast<std::ptrdiff_t>(M);
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(m, m);
  Eigen::MatrixXcd b;
  for (std::size_t begin = 0; begin < q.size(); begin += kChunk) {
    const std::size_t end = std::min(q.size(), begin + kChunk);
    b.resize(static_cast<std::ptrdiff_t>(end - begin), m);
    fill_basis_rows(g, q, begin, end, b);
    a.selfadjointView<Eigen::Lower>().rankUpdate(b.adjoint(), 1.0);
  }
  Eigen::MatrixXcd full = a.selfadjointView<Eigen::Lower>();
  for (std::ptrdiff_t j = 0; j < m; ++j) full(j, j) = full(j, j).real();
  return full;
}

// Centered disk/annulus: the angular integral of e^{i n theta} is 2 pi [n = 0],
// leaving 1-D radial integrals between basis functions.
Eigen::MatrixXcd assemble_rotational(const WindowSpec& g, double inner, double outer,
                                     std::size_t M, std::size_t order) {
  const std::vector<std::size_t> sup = support(g);
  const auto c = g.coeffs();
  const double top = std::min(outer, radial_cutoff(M, g.size()));
  const auto m = static_cast<std::ptrdiff_t>(M);
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(m, m);
  if (!(top > inner)) return a;

  const QuadratureRule rule = gauss_legendre(order, inner, top);
  const std::size_t na = rule.size();
  std::vector<double> wr(na);
  for (std::size_t i = 0; i < na; ++i) wr[i] = rule.weights[i] * rule.nodes[i];

  // w[(s * M + j) * na + a] = W_{j, sup[s]}(rho_a)
  std::vector<double> w(sup.size() * M * na);
  const auto total = static_cast<std::ptrdiff_t>(sup.size() * M);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t idx = 0; idx < total; ++idx) {
    const std::size_t s = static_cast<std::size_t>(idx) / M;
    const int j = static_cast<int>(static_cast<std::size_t>(idx) % M);
    double* row = &w[static_cast<std::size_t>(idx) * na];
    for (std::size_t i = 0; i < na; ++i) {
      row[i] = complex_hermite_radial(j, static_cast<int>(sup[s]), rule.nodes[i]);
    }
  }

  // For each pair of support indices (s, t), entries with j - k = sup[t] - sup[s].
  for (std::size_t s = 0; s < sup.size(); ++s) {
    for (std::size_t t = 0; t < sup.size(); ++t) {
      if (sup[t] < sup[s]) continue;  // lower triangle only: j >= k
      const std::size_t diff = sup[t] - sup[s];
      const cplx coef = 2.0 * kPi * std::conj(c[sup[s]]) * c[sup[t]];
      for (std::size_t k = 0; k + diff < M; ++k) {
        const std::size_t j = k + diff;
        const double* wk = &w[(s * M + k) * na];
        const double* wj = &w[(t * M + j) * na];
        double acc = 0.0;
        for (std::size_t i = 0; i < na; ++i) acc += wr[i] * wk[i] * wj[i];
        a(static_cast<std::ptrdiff_t>(j), static_cast<std::ptrdiff_t>(k)) += coef * acc;
      }
    }
  }
  Eigen::MatrixXcd full = a.selfadjointView<Eigen::Lower>();
  for (std::ptrdiff_t j = 0; j < m; ++j) full(j, j) = full(j, j).real();
  return full;
}

double max_off_diagonal(const Eigen::MatrixXcd& a) {
  double worst = 0.0;
  for (std::ptrdiff_t k = 0; k < a.cols(); ++k) {
    for (std::ptrdiff_t j = 0; j < a.rows(); ++j) {
      if (j != k) worst = std::max(worst, std::abs(a(j, k)));
    }
  }
  return worst;
}

}  // namespace

double ToeplitzMatrix::trace() const { return entries.diagonal().real().sum(); }

std::size_t default_basis_size(const PhaseDomain& d) {
  const std::size_t n = n_omega(d);
  return std::max(2 * n, n + 64);
}

ToeplitzMatrix assemble(const WindowSpec& g, const PhaseDomain& d, std::size_t M,
                        const AssemblyOptions& opts) {
  if (g.size() == 0) fail(ErrorCode::kInvalidArgument, "assemble: empty window");
  const std::size_t n = n_omega(d);
  if (M < n) {
    fail(ErrorCode::kInvalidArgument,
         "assemble: basis size " + std::to_string(M) + " below n_omega = " + std::to_string(n));
  }
  ToeplitzMatrix t;
  t.window = g;
  t.domain = d;
  t.size = M;
  t.order = opts.order ? opts.order : default_radial_order(M);
  t.angular_order = opts.angular_order ? opts.angular_order : std::max<std::size_t>(64, 4 * M);
  t.rotational_path = d.is_radial() && !opts.force_generic;

  if (t.rotational_path) {
    const auto ext = d.radial_extent();
    t.entries = assemble_rotational(g, ext[0], ext[1], M, t.order);
  } else {
    const Quadrature2D q = domain_quadrature(d, t.order, d.is_radial() ? t.angular_order : 0);
    t.entries = assemble_generic(g, q, M);
  }

  const double measure = d.measure();
  t.tail_mass = measure - t.trace();
  if (t.tail_mass > 0.01 * measure) {
    std::ostringstream os;
    os << "insufficient basis: tail mass " << t.tail_mass << " exceeds 1% of |Omega| = " << measure
       << " at M = " << M;
    t.warnings.push_back(os.str());
  }
  if (g.pure_index() >= 0 && d.is_radial()) {
    const double off = max_off_diagonal(t.entries);
    if (off > 1e-10) {
      fail(ErrorCode::kNumerical,
           "assemble: pure Hermite window on a centered disk gave off-diagonal " + std::to_string(off));
    }
  }
  return t;
}

Eigen::MatrixXcd radial_gram(const WindowSpec& g, double inner, double outer, std::size_t M,
                             std::size_t order) {
  if (!(inner >= 0.0) || !(outer >= inner)) fail(ErrorCode::kDomain, "radial_gram: requires 0 <= inner <= outer");
  if (M == 0) fail(ErrorCode::kInvalidArgument, "radial_gram: M must be >= 1");
  return assemble_rotational(g, inner, outer, M, order ? order : default_radial_order(M));
}

SpectralDecomposition eigendecompose(const Eigen::MatrixXcd& a) {
  if (a.rows() != a.cols() || a.rows() == 0) fail(ErrorCode::kInvalidArgument, "eigendecompose: empty or non-square");
  const std::ptrdiff_t m = a.rows();
  SpectralDecomposition s;
  Eigen::VectorXd values;
  Eigen::MatrixXcd vectors;
  if (max_off_diagonal(a) == 0.0) {
    values = a.diagonal().real();
    vectors = Eigen::MatrixXcd::Identity(m, m);
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(a, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) fail(ErrorCode::kConvergence, "eigendecompose: solver did not converge");
    values = solver.eigenvalues();
    vectors = solver.eigenvectors();
  }

  const double norm = std::max(values.cwiseAbs().maxCoeff(), 1e-300);
  for (std::ptrdiff_t i = 0; i < m; ++i) {
    const double res = (a * vectors.col(i) - values(i) * vectors.col(i)).norm() / norm;
    s.residual = std::max(s.residual, res);
  }
  if (s.residual > 1e-9) {
    fail(ErrorCode::kConvergence, "eigendecompose: residual " + std::to_string(s.residual) + " above 1e-9 ||A||");
  }

  std::vector<std::size_t> dominant(static_cast<std::size_t>(m));
  for (std::ptrdiff_t i = 0; i < m; ++i) {
    std::ptrdiff_t arg = 0;
    vectors.col(i).cwiseAbs2().maxCoeff(&arg);
    dominant[static_cast<std::size_t>(i)] = static_cast<std::size_t>(arg);
  }

  std::vector<std::size_t> perm(static_cast<std::size_t>(m));
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(), [&](std::size_t x, std::size_t y) {
    return values(static_cast<std::ptrdiff_t>(x)) > values(static_cast<std::ptrdiff_t>(y));
  });
  // Group runs whose spread from the group's leading value is within tolerance.
  std::size_t begin = 0;
  while (begin < perm.size()) {
    std::size_t end = begin + 1;
    const double lead = values(static_cast<std::ptrdiff_t>(perm[begin]));
    while (end < perm.size() && lead - values(static_cast<std::ptrdiff_t>(perm[end])) <= kTieTolerance) ++end;
    if (end - begin > 1) {
      ++s.tie_groups;
      std::stable_sort(perm.begin() + static_cast<std::ptrdiff_t>(begin), perm.begin() + static_cast<std::ptrdiff_t>(end),
                       [&](std::size_t x, std::size_t y) { return dominant[x] < dominant[y]; });
    }
    begin = end;
  }

  s.eigenvalues.resize(m);
  s.eigenvectors.resize(m, m);
  s.dominant_index.resize(static_cast<std::size_t>(m));
  for (std::ptrdiff_t i = 0; i < m; ++i) {
    const std::size_t src = perm[static_cast<std::size_t>(i)];
    const double v = values(static_cast<std::ptrdiff_t>(src));
    s.clamped = std::max({s.clamped, -v, v - 1.0});
    s.eigenvalues(i) = std::clamp(v, 0.0, 1.0);
    s.eigenvectors.col(i) = vectors.col(static_cast<std::ptrdiff_t>(src));
    s.dominant_index[static_cast<std::size_t>(i)] = dominant[src];
  }
  s.clamped = std::max(s.clamped, 0.0);
  s.tie_break = "descending eigenvalue; ties within 1e-12 by ascending dominant Hermite index (" +
                std::to_string(s.tie_groups) + " tie groups)";
  return s;
}

SpectralDecomposition eigendecompose(const ToeplitzMatrix& t) { return eigendecompose(t.entries); }

double mu_radial(int r, int j, double R, std::size_t order) {
  if (r < 0 || j < 0) fail(ErrorCode::kDomain, "mu_radial: indices must be >= 0");
  if (!(R > 0.0)) fail(ErrorCode::kDomain, "mu_radial: R must be positive");
  const std::size_t top_index = static_cast<std::size_t>(std::max(j, r));
  if (order == 0) order = default_radial_order(top_index);
  const double top = std::min(R, radial_cutoff(top_index, static_cast<std::size_t>(r)));
  const QuadratureRule rule = gauss_legendre(order, 0.0, top);
  return 2.0 * kPi * rule.integrate([&](double rho) {
    const double w = complex_hermite_radial(j, r, rho);
    return rho * w * w;
  });
}

std::vector<double> mu_radial_all(int r, std::size_t count, double R) {
  if (r < 0) fail(ErrorCode::kDomain, "mu_radial: r must be >= 0");
  if (!(R > 0.0)) fail(ErrorCode::kDomain, "mu_radial: R must be positive");
  std::vector<double> out(count, 0.0);
  if (count == 0) return out;
  const std::size_t top_index = std::max(count - 1, static_cast<std::size_t>(r));
  const double top = std::min(R, radial_cutoff(top_index, static_cast<std::size_t>(r)));
  const QuadratureRule rule = gauss_legendre(default_radial_order(top_index), 0.0, top);
  const auto n = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t j = 0; j < n; ++j) {
    out[static_cast<std::size_t>(j)] = 2.0 * kPi * rule.integrate([&](double rho) {
      const double w = complex_hermite_radial(static_cast<int>(j), r, rho);
      return rho * w * w;
    });
  }
  return out;
}

std::size_t weyl_count(const SpectralDecomposition& s, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) fail(ErrorCode::kInvalidArgument, "weyl_count: delta must lie in (0, 1)");
  std::size_t n = 0;
  for (std::ptrdiff_t i = 0; i < s.eigenvalues.size(); ++i) {
    if (s.eigenvalues(i) > 1.0 - delta) ++n;
  }
  return n;
}

DoubleOrthogonality double_orthogonality_check(const SpectralDecomposition& s, const ToeplitzMatrix& t,
                                               std::size_t count, std::size_t order) {
  const std::size_t M = t.size;
  if (count == 0 || count > M) count = M;
  if (order == 0) order = t.order;
  const Quadrature2D q = domain_quadrature(t.domain, order, t.domain.is_radial() ? t.angular_order : 0);
  const auto c = static_cast<std::ptrdiff_t>(count);
  const Eigen::MatrixXcd v = s.eigenvectors.leftCols(c);

  Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(c, c);
  Eigen::MatrixXcd b;
  for (std::size_t begin = 0; begin < q.size(); begin += kChunk) {
    const std::size_t end = std::min(q.size(), begin + kChunk);
    b.resize(static_cast<std::ptrdiff_t>(end - begin), static_cast<std::ptrdiff_t>(M));
    fill_basis_rows(t.window, q, begin, end, b);
    const Eigen::MatrixXcd p = b * v;
    g.selfadjointView<Eigen::Lower>().rankUpdate(p.adjoint(), 1.0);
  }
  DoubleOrthogonality out;
  out.gram = g.selfadjointView<Eigen::Lower>();
  out.max_off_diagonal = max_off_diagonal(out.gram);
  for (std::ptrdiff_t j = 0; j < c; ++j) {
    out.max_diagonal_error = std::max(out.max_diagonal_error, std::abs(out.gram(j, j).real() - s.eigenvalues(j)));
  }
  if (out.max_diagonal_error > 1e-6) {
    fail(ErrorCode::kNumerical,
         "double orthogonality: restricted norm differs from eigenvalue by " + std::to_string(out.max_diagonal_error));
  }
  return out;
}

void write_spectrum_csv(std::ostream& os, const SpectralDecomposition& s) {
  os << "j,lambda\n";
  char buf[64];
  for (std::ptrdiff_t i = 0; i < s.eigenvalues.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%td,%.17g\n", i, s.eigenvalues(i));
    os << buf;
  }
}

void write_eigenvectors_csv(std::ostream& os, const SpectralDecomposition& s, const ToeplitzMatrix& t) {
  os << "M,window,domain\n" << t.size << ',' << t.window.descriptor() << ',' << t.domain.descriptor() << '\n';
  os << "column,row,re,im\n";
  char buf[128];
  for (std::ptrdiff_t i = 0; i < s.eigenvectors.cols(); ++i) {
    for (std::ptrdiff_t k = 0; k < s.eigenvectors.rows(); ++k) {
      const cplx v = s.eigenvectors(k, i);
      std::snprintf(buf, sizeof buf, "%td,%td,%.17g,%.17g\n", i, k, v.real(), v.imag());
      os << buf;
    }
  }
}

}  // namespace whens
