// Copyright 2026 The whens Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <omp.h>

#include <cmath>
#include <sstream>

#include "oracles.hpp"
#include "whens/error.hpp"
#include "whens/specfun.hpp"
#include "whens/toeplitz.hpp"

using whens::cplx;
using whens::PhaseDomain;
using whens::PhasePoint;
using whens::WindowSpec;
using std::numbers::pi;

namespace {

std::vector<cplx> random_coeffs(oracle::Lcg& rng, std::size_t n) {
  std::vector<cplx> c(n);
  for (auto& v : c) v = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
  return c;
}

double max_off_diagonal(const Eigen::MatrixXcd& a) {
  double m = 0.0;
  for (Eigen::Index j = 0; j < a.rows(); ++j) {
    for (Eigen::Index k = 0; k < a.cols(); ++k) {
      if (j != k) m = std::max(m, std::abs(a(j, k)));
    }
  }
  return m;
}

void check_matrix_invariants(const whens::ToeplitzMatrix& t) {
  const auto& a = t.entries;
  for (Eigen::Index j = 0; j < a.rows(); ++j) {
    CHECK(a(j, j).imag() == 0.0);
    CHECK(a(j, j).real() >= 0.0);
    CHECK(a(j, j).real() <= 1.0);
    for (Eigen::Index k = 0; k < a.cols(); ++k) CHECK(a(j, k) == std::conj(a(k, j)));
  }
  CHECK(t.trace() <= t.domain.measure() + 1e-9);
  CHECK(t.tail_mass >= -1e-9);
}

void check_decomposition_invariants(const whens::SpectralDecomposition& s, const Eigen::MatrixXcd& a) {
  const Eigen::Index n = a.rows();
  const double norm = a.operatorNorm();
  for (Eigen::Index j = 0; j < n; ++j) {
    CHECK(s.eigenvalues(j) >= 0.0);
    CHECK(s.eigenvalues(j) <= 1.0);
    // Non-increasing up to the 1e-12 tie window, inside which the dominant index decides.
    if (j > 0) CHECK(s.eigenvalues(j) <= s.eigenvalues(j - 1) + 1e-12);
    const Eigen::VectorXcd res = a * s.eigenvectors.col(j) - s.eigenvalues(j) * s.eigenvectors.col(j);
    CHECK(res.norm() <= 1e-9 * std::max(norm, 1e-300) + 1e-15);
  }
  const Eigen::MatrixXcd gram = s.eigenvectors.adjoint() * s.eigenvectors;
  CHECK((gram - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff() <= 1e-10);
  CHECK(std::abs(s.eigenvalues.sum() - a.trace().real()) <= 1e-9);
}

}  // namespace

TEST_CASE("assemble: Gaussian window on a disk gives incomplete gamma values") {
  const auto t = whens::assemble(WindowSpec::hermite(0), PhaseDomain::disk_with_area(4.0), 32);
  CHECK(t.rotational_path);
  CHECK(max_off_diagonal(t.entries) <= 1e-10);
  for (int j = 0; j < 32; ++j) CHECK(std::abs(t.entries(j, j).real() - oracle::lower_gamma(j, 4.0)) <= 1e-12);
  check_matrix_invariants(t);
}

TEST_CASE("assemble: trace approaches the measure as M grows") {
  const auto g = WindowSpec::hermite(1);
  const auto d = PhaseDomain::rect(-1.0, 1.5, -1.0, 1.0);
  double prev_gap = 1e9;
  for (std::size_t M : {8u, 16u, 32u, 64u}) {
    const auto t = whens::assemble(g, d, M, {.order = 160});
    const double gap = d.measure() - t.trace();
    CHECK(gap >= -1e-9);
    CHECK(gap <= prev_gap + 1e-12);
    CHECK(std::abs(gap - t.tail_mass) <= 1e-12);
    prev_gap = gap;
  }
  CHECK(prev_gap <= 1e-8);
}

TEST_CASE("assemble: h_1 on a 2x2 square matches a 400x400 Riemann sum") {
  const auto g = WindowSpec::hermite(1);
  const auto d = PhaseDomain::rect(-1.0, 1.0, -1.0, 1.0);
  const std::size_t M = 48;
  const auto t = whens::assemble(g, d, M);
  CHECK(!t.rotational_path);
  check_matrix_invariants(t);
  CHECK(max_off_diagonal(t.entries) > 1e-3);

  const std::size_t n = 400;
  const double h = 2.0 / n;
  Eigen::MatrixXcd ref = Eigen::MatrixXcd::Zero(M, M);
  Eigen::VectorXcd col(M);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const PhasePoint p{-1.0 + (i + 0.5) * h, -1.0 + (k + 0.5) * h};
      for (std::size_t j = 0; j < M; ++j) col(j) = whens::stft_hermite(static_cast<int>(j), 1, p);
      ref.selfadjointView<Eigen::Lower>().rankUpdate(col.conjugate(), h * h);
    }
  }
  ref.triangularView<Eigen::StrictlyUpper>() = ref.adjoint();
  CHECK((t.entries - ref).cwiseAbs().maxCoeff() <= 1e-5);
}

TEST_CASE("assemble: rotational path agrees with generic quadrature") {
  oracle::Lcg rng(41);
  const auto g = WindowSpec::from_coefficients(random_coeffs(rng, 4));
  for (const auto& d : {PhaseDomain::disk(1.3), PhaseDomain::annulus(0.6, 1.8)}) {
    const auto fast = whens::assemble(g, d, 24);
    const auto slow = whens::assemble(g, d, 24, {.force_generic = true});
    CHECK(fast.rotational_path);
    CHECK(!slow.rotational_path);
    CHECK((fast.entries - slow.entries).cwiseAbs().maxCoeff() <= 1e-10);
    check_matrix_invariants(fast);
  }
}

TEST_CASE("assemble: diagonal for pure windows on centered disks and annuli") {
  for (int r = 0; r <= 3; ++r) {
    const auto t = whens::assemble(WindowSpec::hermite(r), PhaseDomain::annulus(0.5, 2.0), 40);
    CHECK(max_off_diagonal(t.entries) <= 1e-10);
    for (int j = 0; j < 40; j += 7) {
      const double mu = whens::mu_radial(r, j, 2.0) - whens::mu_radial(r, j, 0.5);
      CHECK(std::abs(t.entries(j, j).real() - mu) <= 1e-10);
    }
  }
}

TEST_CASE("assemble: errors and warnings") {
  const auto d = PhaseDomain::disk_with_area(20.0);
  CHECK_THROWS_AS(whens::assemble(WindowSpec::hermite(0), d, 10), whens::Error);
  const auto small = whens::assemble(WindowSpec::hermite(0), d, 20);
  CHECK(!small.warnings.empty());
  CHECK(small.tail_mass > 0.01 * d.measure());
  const auto big = whens::assemble(WindowSpec::hermite(0), d, whens::default_basis_size(d));
  CHECK(big.warnings.empty());
  CHECK(whens::default_basis_size(d) == 84);
  CHECK(whens::default_basis_size(PhaseDomain::disk_with_area(100.0)) == 200);
}

TEST_CASE("assemble: bit-identical across thread counts") {
  oracle::Lcg rng(43);
  const auto g = WindowSpec::from_coefficients(random_coeffs(rng, 3));
  const auto d = PhaseDomain::polygon({{-1, -1}, {1.5, -0.5}, {0.5, 1.2}, {-0.8, 0.9}});
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  const auto one = whens::assemble(g, d, 20, {.order = 60});
  omp_set_num_threads(4);
  const auto four = whens::assemble(g, d, 20, {.order = 60});
  omp_set_num_threads(saved);
  CHECK(one.entries == four.entries);
}

TEST_CASE("eigendecompose: worked examples") {
  Eigen::MatrixXcd diag = Eigen::MatrixXcd::Zero(4, 4);
  diag.diagonal() << 0.2, 0.9, 0.5, 0.7;
  const auto s = whens::eigendecompose(diag);
  CHECK(s.eigenvalues(0) == 0.9);
  CHECK(s.eigenvalues(3) == 0.2);
  CHECK(s.eigenvectors.col(0) == Eigen::VectorXcd::Unit(4, 1));
  CHECK(s.eigenvectors.col(1) == Eigen::VectorXcd::Unit(4, 3));
  CHECK(s.eigenvectors.col(2) == Eigen::VectorXcd::Unit(4, 2));
  CHECK(s.eigenvectors.col(3) == Eigen::VectorXcd::Unit(4, 0));

  const double a = 0.7;
  const cplx b{0.1, 0.0};
  const double c = 0.3;
  Eigen::MatrixXcd m(2, 2);
  m << a, b, std::conj(b), c;
  const auto s2 = whens::eigendecompose(m);
  const double disc = std::sqrt((a - c) * (a - c) / 4.0 + std::norm(b));
  CHECK(std::abs(s2.eigenvalues(0) - ((a + c) / 2 + disc)) <= 1e-15);
  CHECK(std::abs(s2.eigenvalues(1) - ((a + c) / 2 - disc)) <= 1e-15);
  check_decomposition_invariants(s2, m);

  const auto d = PhaseDomain::disk_with_area(12.0);
  const auto t = whens::assemble(WindowSpec::hermite(0), d, 60);
  const auto st = whens::eigendecompose(t);
  for (int j = 0; j < 60; ++j) CHECK(std::abs(st.eigenvalues(j) - oracle::lower_gamma(j, 12.0)) <= 1e-12);
  for (int j = 0; j < 60; ++j) CHECK(st.dominant_index[j] == static_cast<std::size_t>(j));
}

TEST_CASE("eigendecompose: ties ordered by dominant Hermite index") {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(3, 3);
  m(0, 0) = 0.4;
  m(1, 1) = 0.8;
  m(2, 2) = 0.8;
  m(0, 1) = m(1, 0) = 0.0;
  const auto s = whens::eigendecompose(m);
  CHECK(s.dominant_index[0] == 1);
  CHECK(s.dominant_index[1] == 2);
  CHECK(s.tie_groups >= 1);
  CHECK(!s.tie_break.empty());

  // h_1 on the disk of area 1: mu_0 = mu_1 exactly.
  const auto t = whens::assemble(WindowSpec::hermite(1), PhaseDomain::disk_with_area(1.0), 30);
  const auto st = whens::eigendecompose(t);
  CHECK(std::abs(st.eigenvalues(0) - st.eigenvalues(1)) <= 1e-12);
  CHECK(st.dominant_index[0] == 0);
  CHECK(st.dominant_index[1] == 1);
}

TEST_CASE("eigendecompose: invariants on a generic operator") {
  oracle::Lcg rng(47);
  const auto g = WindowSpec::from_coefficients(random_coeffs(rng, 3));
  const auto t = whens::assemble(g, PhaseDomain::rect(-1.5, 1.5, -1.0, 1.3), 50, {.order = 120});
  check_matrix_invariants(t);
  const auto s = whens::eigendecompose(t);
  check_decomposition_invariants(s, t.entries);
  CHECK(std::abs(s.eigenvalues.sum() + t.tail_mass - t.domain.measure()) <= 1e-6);
}

TEST_CASE("eigendecompose: basis growth stability") {
  const auto g = WindowSpec::hermite(0);
  const auto d = PhaseDomain::rect(-1.0, 1.0, -1.25, 1.25);
  const std::size_t n = whens::n_omega(d);
  const std::size_t M0 = whens::default_basis_size(d);
  const auto s1 = whens::eigendecompose(whens::assemble(g, d, M0, {.order = 200}));
  const auto s2 = whens::eigendecompose(whens::assemble(g, d, 2 * M0, {.order = 200}));
  for (std::size_t j = 0; j < n; ++j) CHECK(std::abs(s1.eigenvalues(j) - s2.eigenvalues(j)) <= 1e-6);
}

TEST_CASE("mu_radial") {
  for (int j = 0; j <= 50; j += 5) {
    for (double area : {1.0, 10.0, 40.0}) {
      CHECK(std::abs(whens::mu_radial(0, j, std::sqrt(area / pi)) - oracle::lower_gamma(j, area)) <= 1e-10);
    }
  }
  for (int r = 0; r <= 3; ++r) {
    for (int j = 0; j <= 10; ++j) CHECK(std::abs(whens::mu_radial(r, j, 20.0) - 1.0) <= 1e-12);
  }
  CHECK(whens::mu_radial(1, 0, 0.2) < whens::mu_radial(1, 1, 0.2));
  CHECK(whens::mu_radial(1, 0, 1.5) > whens::mu_radial(1, 1, 1.5));

  // Independent oracle: radial integral of the double-sum polynomial via Boost quadrature.
  const int r = 2;
  const int j = 5;
  const double R = 1.1;
  const double ref = 2.0 * pi * oracle::integrate(
                                    [&](double rho) {
                                      return rho * std::norm(whens::complex_hermite_weighted(j, r, {rho, 0.0}));
                                    },
                                    0.0, R, 8);
  CHECK(std::abs(whens::mu_radial(r, j, R) - ref) <= 1e-13);

  const auto all = whens::mu_radial_all(1, 12, 1.4);
  for (int k = 0; k < 12; ++k) CHECK(std::abs(all[k] - whens::mu_radial(1, k, 1.4)) <= 1e-13);
}

TEST_CASE("weyl_count") {
  const auto d = PhaseDomain::disk_with_area(25.0);
  const auto s = whens::eigendecompose(whens::assemble(WindowSpec::hermite(0), d, 100));
  std::size_t expect = 0;
  for (int j = 0; j < 100; ++j) expect += oracle::lower_gamma(j, 25.0) > 0.5 ? 1 : 0;
  CHECK(whens::weyl_count(s, 0.5) == expect);
  CHECK(std::abs(static_cast<double>(whens::weyl_count(s, 0.5)) - 25.0) <= 2.0 * std::sqrt(25.0 * pi));
  CHECK(whens::weyl_count(s, 1e-300) == 0);

  whens::SpectralDecomposition ones;
  ones.eigenvalues = Eigen::VectorXd::Ones(7);
  CHECK(whens::weyl_count(ones, 0.5) == 7);
  CHECK_THROWS_AS(whens::weyl_count(ones, 0.0), whens::Error);
  CHECK_THROWS_AS(whens::weyl_count(ones, 1.0), whens::Error);
}

TEST_CASE("double orthogonality") {
  for (int r = 0; r <= 2; ++r) {
    const auto t = whens::assemble(WindowSpec::hermite(r), PhaseDomain::disk_with_area(16.0), 41);
    const auto s = whens::eigendecompose(t);
    const auto dbl = whens::double_orthogonality_check(s, t, 41);
    CHECK(dbl.max_off_diagonal <= 1e-8);
    CHECK(dbl.max_diagonal_error <= 1e-6);
  }
  oracle::Lcg rng(53);
  const auto g = WindowSpec::from_coefficients(random_coeffs(rng, 3));
  const auto t = whens::assemble(g, PhaseDomain::rect(-1.0, 1.0, -1.5, 1.5), 30, {.order = 120});
  const auto s = whens::eigendecompose(t);
  const auto dbl = whens::double_orthogonality_check(s, t);
  CHECK(dbl.max_off_diagonal <= 1e-8);
  for (Eigen::Index j = 0; j < 30; ++j) CHECK(std::abs(dbl.gram(j, j).real() - s.eigenvalues(j)) <= 1e-6);

  // The leading eigenfunctions live well inside a large disk: restricted Gram is the identity.
  const auto big = whens::assemble(WindowSpec::hermite(1), PhaseDomain::disk(5.0), 79);
  const auto sb = whens::eigendecompose(big);
  const auto db = whens::double_orthogonality_check(sb, big, 10);
  CHECK((db.gram - Eigen::MatrixXcd::Identity(10, 10)).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("csv export") {
  const auto t = whens::assemble(WindowSpec::hermite(0), PhaseDomain::disk_with_area(2.0), 4);
  const auto s = whens::eigendecompose(t);
  std::ostringstream os;
  whens::write_spectrum_csv(os, s);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line == "j,lambda");
  std::getline(is, line);
  CHECK(line.rfind("0,", 0) == 0);
  CHECK(std::stod(line.substr(2)) == s.eigenvalues(0));

  std::ostringstream ev;
  whens::write_eigenvectors_csv(ev, s, t);
  std::istringstream es(ev.str());
  std::getline(es, line);
  CHECK(line == "M,window,domain");
  std::getline(es, line);
  CHECK(line.rfind("4,hermite:0,", 0) == 0);
  std::size_t rows = 0;
  while (std::getline(es, line)) ++rows;
  CHECK(rows == 1 + 16);
}
