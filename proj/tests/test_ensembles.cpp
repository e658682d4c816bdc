// Copyright 2026 The whens Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "whens/ensembles.hpp"
#include "whens/error.hpp"

using whens::cplx;
using whens::IndexSet;
using whens::PhaseDomain;
using whens::PhasePoint;
using whens::WindowSpec;
using std::numbers::pi;

namespace {

// Finite Ginibre kernel sum_{j<N} (pi z conj w)^j / j! e^{-pi(|z|^2+|w|^2)/2}.
cplx ginibre(std::size_t N, cplx z, cplx w) {
  const cplx u = pi * z * std::conj(w);
  cplx term = 1.0;
  cplx sum = 0.0;
  for (std::size_t j = 0; j < N; ++j) {
    sum += term;
    term *= u / static_cast<double>(j + 1);
  }
  return sum * std::exp(-pi * (std::norm(z) + std::norm(w)) / 2.0);
}

// 2 pi int_0^rmax rho f(rho) d rho, split at `breaks`.
template <class F>
double radial_integral(F&& f, double rmax, std::vector<double> breaks = {}) {
  return 2.0 * pi * oracle::integrate([&](double rho) { return rho * f(rho); }, 0.0, rmax, 24, breaks);
}

PhasePoint random_point(oracle::Lcg& rng, double radius) {
  return PhasePoint::from_complex(oracle::disk_point(rng, radius));
}

}  // namespace

TEST_CASE("IndexSet") {
  const IndexSet a{3, 0, 1};
  CHECK(a.values() == std::vector<std::size_t>{0, 1, 3});
  CHECK(a.contains(3));
  CHECK(!a.contains(2));
  CHECK(a.max() == 3);
  CHECK_THROWS_AS(IndexSet({1, 1}), whens::Error);
  CHECK(whens::symmetric_difference(a, IndexSet::range(3)) == IndexSet{2, 3});
  CHECK(whens::symmetric_difference(a, a).empty());
}

TEST_CASE("finite WH kernel: Gaussian window reproduces Ginibre after the gauge") {
  const std::size_t N = 12;
  const auto d = PhaseDomain::disk_with_area(static_cast<double>(N));
  const auto t = whens::assemble(WindowSpec::hermite(0), d, whens::default_basis_size(d));
  const auto s = whens::eigendecompose(t);
  const auto k = whens::finite_wh_kernel(s, t);
  CHECK(k.rank() == whens::n_omega(d));
  CHECK(k.family() == whens::ProjectionKernel::Family::kSpectral);

  oracle::Lcg rng(61);
  double worst = 0.0;
  for (int n = 0; n < 50; ++n) {
    const PhasePoint p = random_point(rng, 2.5);
    const PhasePoint q = random_point(rng, 2.5);
    const cplx expect = whens::gauge_renormalize(ginibre(N, p.conj().z(), q.conj().z()), p, q);
    worst = std::max(worst, std::abs(k(p, q) - expect));
  }
  CHECK(worst <= 1e-8);

  // Total mass of the intensity is the rank.
  const double mass = radial_integral([&](double rho) { return k.intensity({rho, 0.0}); }, 7.0);
  CHECK(mass == doctest::Approx(static_cast<double>(N)).epsilon(1e-8));
}

TEST_CASE("finite WH kernel: generic window is a rank-N projection") {
  oracle::Lcg rng(67);
  const auto g = WindowSpec::from_coefficients({cplx{0.6, 0.1}, cplx{-0.2, 0.5}, cplx{0.3, 0.0}});
  const auto d = PhaseDomain::rect(-1.0, 1.5, -1.0, 1.0);
  const auto t = whens::assemble(g, d, whens::default_basis_size(d), {.order = 160});
  const auto s = whens::eigendecompose(t);
  const auto k = whens::finite_wh_kernel(s, t);
  CHECK(k.rank() == 5);
  for (int n = 0; n < 20; ++n) {
    const PhasePoint p = random_point(rng, 2.0);
    const PhasePoint q = random_point(rng, 2.0);
    CHECK(std::abs(k(p, q) - std::conj(k(q, p))) <= 1e-13);
    CHECK(k.intensity(p) <= 1.0 + 1e-12);
    CHECK(std::abs(k(p, p).imag()) <= 1e-14);
  }
  // Trace over the plane = rank, by an oracle tensor quadrature.
  const double mass = oracle::integrate(
      [&](double x) { return oracle::integrate([&](double xi) { return k.intensity({x, xi}); }, -6.0, 6.0, 12); },
      -6.0, 6.0, 12);
  CHECK(mass == doctest::Approx(5.0).epsilon(1e-6));
}

TEST_CASE("pure polyanalytic kernel") {
  oracle::Lcg rng(71);
  const auto k0 = whens::pure_poly_kernel(0, 9);
  for (int n = 0; n < 20; ++n) {
    const PhasePoint p = random_point(rng, 2.5);
    const PhasePoint q = random_point(rng, 2.5);
    CHECK(std::abs(k0(p, q) - ginibre(9, p.z(), q.z())) <= 1e-12);
  }
  CHECK(k0.descriptor() == whens::ginibre_kernel(9).descriptor());

  for (int r = 0; r <= 3; ++r) {
    const auto k = whens::pure_poly_kernel(r, 7);
    CHECK(k.level() == r);
    for (double rho : {0.3, 1.1, 2.2}) {
      const double a = k.intensity({rho, 0.0});
      for (double th : {0.4, 2.0, 4.4}) CHECK(std::abs(k.intensity({rho * std::cos(th), rho * std::sin(th)}) - a) <= 1e-10);
    }
    const double mass = radial_integral([&](double rho) { return k.intensity({rho, 0.0}); }, 7.0);
    CHECK(std::abs(mass - 7.0) <= 1e-8);
  }
}

TEST_CASE("intensity") {
  const auto g1 = whens::ginibre_kernel(1);
  oracle::Lcg rng(73);
  for (int n = 0; n < 10; ++n) {
    const PhasePoint p = random_point(rng, 2.0);
    CHECK(std::abs(g1.intensity(p) - std::exp(-pi * std::norm(p.z()))) <= 1e-15);
  }
  for (std::size_t N : {1u, 5u, 20u}) CHECK(std::abs(whens::ginibre_kernel(N).intensity({0.0, 0.0}) - 1.0) <= 1e-15);
  for (int r = 0; r <= 3; ++r) {
    const auto k = whens::pure_poly_kernel(r, 15);
    const auto grid = whens::intensity_grid(k, -4.0, 4.0, -4.0, 4.0, 41, 41);
    CHECK(grid.values.size() == 41 * 41);
    for (double v : grid.values) CHECK(v <= 1.0 + 1e-12);
    const PhasePoint p = grid.point(3, 17);
    CHECK(grid.values[17 * 41 + 3] == k.intensity(p));
  }
}

TEST_CASE("envelope radius") {
  for (int r : {0, 2}) {
    const auto k = whens::pure_poly_kernel(r, 10);
    const double R = k.envelope_radius();
    const double inside = radial_integral([&](double rho) { return k.intensity({rho, 0.0}); }, R);
    CHECK(10.0 - inside <= 1e-6 * 10.0 * 1.0001);
    CHECK(10.0 - inside >= 0.0);
  }
}

TEST_CASE("L1 deviation: spectral identity") {
  const auto d = PhaseDomain::disk_with_area(20.0);
  const auto t = whens::assemble(WindowSpec::hermite(0), d, 84);
  const auto s = whens::eigendecompose(t);
  CHECK(std::abs(whens::l1_deviation_spectral(s, t, IndexSet{}) - 20.0) <= 1e-8);

  double tail = 0.0;
  for (int j = 20; j < 400; ++j) tail += oracle::lower_gamma(j, 20.0);
  CHECK(std::abs(whens::l1_deviation_spectral(s, t, IndexSet::range(20)) - 2.0 * tail) <= 1e-8);
}

TEST_CASE("L1 deviation: matches direct quadrature of |rho - 1_Omega|") {
  const double R = std::sqrt(20.0 / pi);
  const auto d = PhaseDomain::disk(R);
  const auto t = whens::assemble(WindowSpec::hermite(1), d, whens::default_basis_size(d));
  const auto s = whens::eigendecompose(t);
  const auto k = whens::finite_wh_kernel(s, t);
  const double spectral = whens::l1_deviation_spectral(s, t, IndexSet::range(20));

  constexpr int kAngles = 8;
  double direct = 0.0;
  for (int b = 0; b < kAngles; ++b) {
    const double th = 2.0 * pi * (b + 0.5) / kAngles;
    direct += radial_integral(
                  [&](double rho) {
                    const double v = k.intensity({rho * std::cos(th), rho * std::sin(th)});
                    return std::abs(v - (rho < R ? 1.0 : 0.0));
                  },
                  8.0, {R}) /
              kAngles;
  }
  CHECK(std::abs(direct - spectral) <= 1e-4 * spectral);
}

TEST_CASE("L1 deviation: identity across windows, shapes and sizes") {
  for (double area : {10.0, 20.0}) {
    const double hx = 1.0;
    const double hxi = area / 4.0 / hx;
    const std::vector<PhaseDomain> domains = {PhaseDomain::disk_with_area(area),
                                              PhaseDomain::rect(-hx, hx, -hxi, hxi)};
    for (int r = 0; r <= 2; ++r) {
      for (const auto& d : domains) {
        const auto t = whens::assemble(WindowSpec::hermite(r), d, whens::default_basis_size(d));
        const auto s = whens::eigendecompose(t);
        const auto k = whens::finite_wh_kernel(s, t);
        const double spectral = whens::l1_deviation_spectral(s, t, IndexSet::range(k.rank()));
        auto dev = [&](double x, double xi) {
          return std::abs(k.intensity({x, xi}) - (d.contains({x, xi}) ? 1.0 : 0.0));
        };
        const double L = d.bounding_radius() + 6.0;
        double direct = 0.0;
        if (d.is_radial()) {
          const double R = d.bounding_radius();
          direct = radial_integral([&](double rho) { return dev(rho, 0.0); }, L, {R});
        } else {
          direct = oracle::integrate(
              [&](double x) { return oracle::integrate([&](double xi) { return dev(x, xi); }, -L, L, 6, {-hxi, hxi}); },
              -L, L, 6, {-hx, hx});
        }
        INFO("r = " << r << ", " << d.descriptor());
        CHECK(std::abs(direct - spectral) <= 1e-4 * spectral);
      }
    }
  }
}

TEST_CASE("L1 deviation: dilated rectangles concentrate") {
  // ||rho_{g, m Omega}(m .) - 1_Omega||_1 = ||rho_{g, m Omega} - 1_{m Omega}||_1 / m^2.
  const auto base = PhaseDomain::rect(-1.0, 1.0, -1.25, 1.25);
  double prev = INFINITY;
  for (double m : {1.0, 2.0, 4.0}) {
    const auto d = base.scaled(m);
    const auto t = whens::assemble(WindowSpec::hermite(0), d, whens::default_basis_size(d), {.order = 240});
    CHECK(t.warnings.empty());
    const auto s = whens::eigendecompose(t);
    const double v = whens::l1_deviation_spectral(s, t, IndexSet::range(whens::n_omega(d))) / (m * m);
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("L1 deviation: pure ensembles") {
  double expect = 0.0;
  for (int j = 0; j < 25; ++j) expect += 1.0 - oracle::lower_gamma(j, 25.0);
  CHECK(std::abs(whens::l1_deviation_poly(0, 25) - 2.0 * expect) <= 1e-9);

  const double R = std::sqrt(10.0 / pi);
  const auto k = whens::pure_poly_kernel(2, 10);
  const double direct = radial_integral(
      [&](double rho) { return std::abs(k.intensity({rho, 0.0}) - (rho < R ? 1.0 : 0.0)); }, 8.0, {R});
  CHECK(std::abs(direct - whens::l1_deviation_poly(2, 10)) <= 1e-8);
}

TEST_CASE("poly index sets") {
  for (std::size_t N : {1u, 7u, 30u}) CHECK(whens::poly_index_set(0, N) == IndexSet::range(N));

  // h_1, area slightly below 1: mu_1 > mu_0, so the single index is 1.
  CHECK(whens::poly_index_set_for_area(1, 1, 0.9) == IndexSet{1});
  // Exactly at area 1 the two coincide; the tie goes to the lower index and is reported.
  std::vector<std::string> warnings;
  CHECK(whens::poly_index_set_for_area(1, 1, 1.0, &warnings) == IndexSet{0});
  CHECK(!warnings.empty());
  // At area 1 the r = 1 values for j = 0, 1, 2 all equal P(2, 1) (mu^r_j is symmetric in r, j).
  const double R1 = 1.0 / std::sqrt(pi);
  for (int j = 0; j <= 2; ++j) CHECK(std::abs(whens::mu_radial(1, j, R1) - oracle::lower_gamma(1, 1.0)) <= 1e-14);
  for (int r = 0; r <= 3; ++r) {
    for (int j = 0; j <= 3; ++j) CHECK(std::abs(whens::mu_radial(r, j, 0.9) - whens::mu_radial(j, r, 0.9)) <= 1e-14);
  }
  // h_2 at area 1 prefers index 1 strictly.
  CHECK(whens::mu_radial(2, 1, R1) > whens::mu_radial(2, 0, R1));
  CHECK(whens::poly_index_set(2, 1) == IndexSet{1});

  for (int r = 0; r <= 3; ++r) {
    double prev = 1e9;
    for (std::size_t N : {10u, 40u, 160u}) {
      const auto I = whens::poly_index_set(r, N);
      CHECK(I.size() == N);
      const double frac = static_cast<double>(whens::symmetric_difference(I, IndexSet::range(N)).size()) / N;
      CHECK(frac <= prev + 1e-15);
      prev = frac;
    }
  }
}

TEST_CASE("trace distance and crossings") {
  for (std::size_t N : {1u, 25u, 100u}) CHECK(whens::trace_distance_poly(0, N) == 0.0);
  CHECK(whens::trace_distance_poly(2, 1) == 2.0);
  CHECK(whens::trace_distance_poly(1, 1) == 0.0);  // tie at the cut, broken toward index 0

  const double R = whens::mu_crossing_radius(1, 0, 1, 0.05, 2.0);
  CHECK(std::abs(R - 1.0 / std::sqrt(pi)) <= 1e-12);
  CHECK(whens::mu_radial(1, 1, 0.5 * R) > whens::mu_radial(1, 0, 0.5 * R));
  CHECK(whens::mu_radial(1, 1, 1.5 * R) < whens::mu_radial(1, 0, 1.5 * R));
  CHECK_THROWS_AS(whens::mu_crossing_radius(1, 0, 1, 0.05, 0.1), whens::Error);

  const std::vector<std::size_t> Ns{25, 100};
  const auto rows = whens::compare_sweep(1, Ns);
  REQUIRE(rows.size() == 2);
  for (const auto& row : rows) {
    CHECK(row.ratio == doctest::Approx(row.symdiff / std::sqrt(static_cast<double>(row.N))));
    CHECK(row.symdiff == whens::trace_distance_poly(1, row.N));
  }
}
