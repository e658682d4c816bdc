// Copyright 2026 The whens Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "oracles.hpp"
#include "whens/domains.hpp"
#include "whens/error.hpp"

using whens::PhaseDomain;
using whens::PhasePoint;
using std::numbers::pi;

namespace {

whens::ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const whens::Error& e) {
    return e.code();
  }
  return whens::ErrorCode{};
}

double weight_sum(const whens::Quadrature2D& q) {
  double s = 0.0;
  for (double w : q.weights) s += w;
  return s;
}

}  // namespace

TEST_CASE("descriptors") {
  const auto d = PhaseDomain::parse("disk:2");
  CHECK(d.measure() == doctest::Approx(4.0 * pi));
  CHECK(d.perimeter() == doctest::Approx(4.0 * pi));
  CHECK(d.is_radial());

  const auto a = PhaseDomain::parse("annulus:1,2");
  CHECK(a.measure() == doctest::Approx(3.0 * pi));
  CHECK(a.perimeter() == doctest::Approx(6.0 * pi));
  CHECK(!a.contains({0.5, 0.0}));
  CHECK(a.contains({1.5, 0.0}));

  const auto r = PhaseDomain::parse("rect:0,3,-1,4");
  CHECK(r.measure() == doctest::Approx(15.0));
  CHECK(r.perimeter() == doctest::Approx(16.0));
  CHECK(!r.is_radial());

  CHECK(code_of([] { PhaseDomain::parse("disk:0"); }) == whens::ErrorCode::kDomain);
  CHECK(code_of([] { PhaseDomain::parse("disk:-1"); }) == whens::ErrorCode::kDomain);
  CHECK(code_of([] { PhaseDomain::parse("annulus:2,1"); }) == whens::ErrorCode::kDomain);
  CHECK(code_of([] { PhaseDomain::parse("rect:1,1,0,2"); }) == whens::ErrorCode::kDomain);
  CHECK(code_of([] { PhaseDomain::parse("circle:1"); }) == whens::ErrorCode::kParse);
  CHECK(code_of([] { PhaseDomain::parse("disk:abc"); }) == whens::ErrorCode::kParse);
  CHECK(code_of([] { PhaseDomain::parse("rect:0,1,2"); }) == whens::ErrorCode::kParse);
  CHECK(code_of([] { PhaseDomain::parse("poly:@/nonexistent.txt"); }) == whens::ErrorCode::kIo);
}

TEST_CASE("polygons") {
  const auto sq = PhaseDomain::polygon({{0, 0}, {0, 2}, {2, 2}, {2, 0}});  // clockwise input
  CHECK(sq.measure() == doctest::Approx(4.0));
  CHECK(sq.perimeter() == doctest::Approx(8.0));
  CHECK(sq.contains({1.0, 1.0}));
  CHECK(!sq.contains({2.5, 1.0}));

  // Non-convex L shape.
  const auto ell = PhaseDomain::polygon({{0, 0}, {3, 0}, {3, 1}, {1, 1}, {1, 3}, {0, 3}});
  CHECK(ell.measure() == doctest::Approx(5.0));
  CHECK(ell.perimeter() == doctest::Approx(12.0));
  CHECK(!ell.contains({2.0, 2.0}));
  CHECK(ell.contains({0.5, 2.5}));
  const auto q = whens::domain_quadrature(ell, 8);
  CHECK(weight_sum(q) == doctest::Approx(5.0).epsilon(1e-13));
  const double mx = q.integrate([](PhasePoint p) { return p.x; });
  CHECK(mx == doctest::Approx(1.5 * 1.0 * 3.0 + 0.5 * 2.0 * 1.0).epsilon(1e-12));  // first moment

  CHECK(code_of([] { PhaseDomain::polygon({{0, 0}, {1, 1}, {1, 0}, {0, 1}}); }) ==
        whens::ErrorCode::kDegenerateGeometry);
  CHECK(code_of([] { PhaseDomain::polygon({{0, 0}, {1, 1}, {2, 2}}); }) == whens::ErrorCode::kDegenerateGeometry);
  CHECK(code_of([] { PhaseDomain::polygon({{0, 0}, {1, 1}}); }) == whens::ErrorCode::kDegenerateGeometry);

  const auto path = std::filesystem::temp_directory_path() / "whens_poly_test.txt";
  {
    std::ofstream os(path);
    os << "# triangle\n0 0\n4 0\n0 3\n0 0\n";
  }
  const auto tri = PhaseDomain::parse("poly:@" + path.string());
  CHECK(tri.measure() == doctest::Approx(6.0));
  CHECK(tri.perimeter() == doctest::Approx(12.0));
  std::filesystem::remove(path);
}

TEST_CASE("n_omega") {
  CHECK(whens::n_omega(PhaseDomain::disk_with_area(10.0)) == 10);
  CHECK(whens::n_omega(PhaseDomain::disk_with_area(10.2)) == 11);
  CHECK(whens::n_omega(PhaseDomain::rect(0, 3, 0, 5)) == 15);
  CHECK(whens::n_omega(PhaseDomain::disk(std::sqrt(20.0 / pi))) == 20);
  CHECK(whens::n_omega(PhaseDomain::disk_with_area(0.3)) == 1);
}

TEST_CASE("dilation") {
  const auto d = PhaseDomain::rect(-1, 1, 0, 0.5);
  const auto s = d.scaled(3.0);
  CHECK(s.measure() == doctest::Approx(9.0 * d.measure()));
  CHECK(s.perimeter() == doctest::Approx(3.0 * d.perimeter()));
  CHECK(s.contains({2.5, 1.4}));
  CHECK(!d.contains({2.5, 1.4}));
  CHECK(s.bounding_radius() == doctest::Approx(3.0 * d.bounding_radius()));
  const auto q = whens::domain_quadrature(s, 12);
  CHECK(weight_sum(q) == doctest::Approx(s.measure()).epsilon(1e-13));
}

TEST_CASE("quadrature: disk") {
  const auto unit = PhaseDomain::disk(1.0);
  CHECK(weight_sum(whens::domain_quadrature(unit, 16)) == doctest::Approx(pi).epsilon(1e-10));

  const auto d = PhaseDomain::disk(1.7);
  const auto q = whens::domain_quadrature(d, 40);
  CHECK(q.integrate([](PhasePoint p) { return p.x > 0 ? 1.0 : 0.0; }) ==
        doctest::Approx(d.measure() / 2.0).epsilon(1e-6));
  for (double R : {0.3, 1.0, 2.5}) {
    const auto qr = whens::domain_quadrature(PhaseDomain::disk(R), 48);
    const double g = qr.integrate([](PhasePoint p) { return std::exp(-pi * (p.x * p.x + p.xi * p.xi)); });
    CHECK(std::abs(g - (1.0 - std::exp(-pi * R * R))) < 1e-10);
  }
}

TEST_CASE("quadrature: annulus, rect and polygon against oracles") {
  auto f = [](PhasePoint p) { return std::exp(-0.5 * (p.x * p.x + 2.0 * p.xi * p.xi)) * (1.0 + p.x * p.xi); };

  const auto a = PhaseDomain::annulus(0.5, 1.5);
  const double ia = whens::domain_quadrature(a, 40).integrate(f);
  const double ref_a = oracle::integrate(
      [&](double rho) {
        return rho * oracle::integrate([&](double th) { return f({rho * std::cos(th), rho * std::sin(th)}); }, 0.0,
                                       2.0 * pi, 8);
      },
      0.5, 1.5, 4);
  CHECK(ia == doctest::Approx(ref_a).epsilon(1e-10));

  const auto r = PhaseDomain::rect(-1.0, 2.0, -0.5, 1.0);
  const double ir = whens::domain_quadrature(r, 30).integrate(f);
  const double ref_r = oracle::integrate(
      [&](double x) { return oracle::integrate([&](double xi) { return f({x, xi}); }, -0.5, 1.0, 4); }, -1.0, 2.0, 4);
  CHECK(ir == doctest::Approx(ref_r).epsilon(1e-12));

  // Same rectangle as a polygon.
  const auto pr = PhaseDomain::polygon({{-1.0, -0.5}, {2.0, -0.5}, {2.0, 1.0}, {-1.0, 1.0}});
  CHECK(whens::domain_quadrature(pr, 30).integrate(f) == doctest::Approx(ref_r).epsilon(1e-12));
}
