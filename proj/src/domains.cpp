// Copyright 2026 The whens Authors
// SPDX-License-Identifier: Apache-2.0

#include "whens/domains.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "whens/error.hpp"
#include "whens/specfun.hpp"

namespace whens {

namespace {

constexpr double kPi = std::numbers::pi;

double cross(PhasePoint o, PhasePoint a, PhasePoint b) {
  return (a.x - o.x) * (b.xi - o.xi) - (a.xi - o.xi) * (b.x - o.x);
}

double signed_area(const std::vector<PhasePoint>& v) {
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const PhasePoint& p = v[i];
    const PhasePoint& q = v[(i + 1) % v.size()];
    s += p.x * q.xi - q.x * p.xi;
  }
  return 0.5 * s;
}

bool on_segment(PhasePoint p, PhasePoint q, PhasePoint r) {
  return std::min(p.x, r.x) <= q.x && q.x <= std::max(p.x, r.x) && std::min(p.xi, r.xi) <= q.xi &&
         q.xi <= std::max(p.xi, r.xi);
}

int orientation(PhasePoint p, PhasePoint q, PhasePoint r) {
  const double v = cross(p, q, r);
  if (v > 0) return 1;
  if (v < 0) return -1;
  return 0;
}

bool segments_intersect(PhasePoint p1, PhasePoint q1, PhasePoint p2, PhasePoint q2) {
  const int o1 = orientation(p1, q1, p2);
  const int o2 = orientation(p1, q1, q2);
  const int o3 = orientation(p2, q2, p1);
  const int o4 = orientation(p2, q2, q1);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(p1, p2, q1)) return true;
  if (o2 == 0 && on_segment(p1, q2, q1)) return true;
  if (o3 == 0 && on_segment(p2, p1, q2)) return true;
  if (o4 == 0 && on_segment(p2, q1, q2)) return true;
  return false;
}

bool point_in_triangle(PhasePoint p, PhasePoint a, PhasePoint b, PhasePoint c) {
  return cross(a, b, p) >= 0 && cross(b, c, p) >= 0 && cross(c, a, p) >= 0;
}

// Ear clipping for a simple counterclockwise polygon.
std::vector<std::array<std::size_t, 3>> triangulate(const std::vector<PhasePoint>& v) {
  std::vector<std::size_t> idx(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) idx[i] = i;
  std::vector<std::array<std::size_t, 3>> tris;
  std::size_t guard = 0;
  while (idx.size() > 3) {
    bool clipped = false;
    for (std::size_t k = 0; k < idx.size(); ++k) {
      const std::size_t ia = idx[(k + idx.size() - 1) % idx.size()];
      const std::size_t ib = idx[k];
      const std::size_t ic = idx[(k + 1) % idx.size()];
      if (cross(v[ia], v[ib], v[ic]) <= 0) continue;  // reflex or flat
      bool empty = true;
      for (std::size_t m : idx) {
        if (m == ia || m == ib || m == ic) continue;
        if (point_in_triangle(v[m], v[ia], v[ib], v[ic])) {
          empty = false;
          break;
        }
      }
      if (!empty) continue;
      tris.push_back({ia, ib, ic});
      idx.erase(idx.begin() + static_cast<std::ptrdiff_t>(k));
      clipped = true;
      break;
    }
    if (!clipped || ++guard > 4 * v.size()) {
      fail(ErrorCode::kDegenerateGeometry, "polygon: triangulation failed (collinear or degenerate vertices)");
    }
  }
  if (cross(v[idx[0]], v[idx[1]], v[idx[2]]) > 0) tris.push_back({idx[0], idx[1], idx[2]});
  return tris;
}

double parse_double(const std::string& s, const std::string& what) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    fail(ErrorCode::kParse, "invalid number in " + what + ": '" + s + "'");
  }
  if (pos != s.size() || !std::isfinite(v)) fail(ErrorCode::kParse, "invalid number in " + what + ": '" + s + "'");
  return v;
}

std::vector<double> parse_list(const std::string& s, std::size_t expected, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_double(item, what));
  if (out.size() != expected) {
    fail(ErrorCode::kParse, what + ": expected " + std::to_string(expected) + " comma-separated values");
  }
  return out;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

struct BaseMeasure {
  double operator()(const Disk& s) const { return kPi * s.radius * s.radius; }
  double operator()(const Annulus& s) const { return kPi * (s.outer * s.outer - s.inner * s.inner); }
  double operator()(const Rect& s) const { return (s.b - s.a) * (s.d - s.c); }
  double operator()(const Polygon& s) const { return signed_area(s.vertices); }
};

struct BasePerimeter {
  double operator()(const Disk& s) const { return 2.0 * kPi * s.radius; }
  double operator()(const Annulus& s) const { return 2.0 * kPi * (s.outer + s.inner); }
  double operator()(const Rect& s) const { return 2.0 * (s.b - s.a) + 2.0 * (s.d - s.c); }
  double operator()(const Polygon& s) const {
    double l = 0.0;
    for (std::size_t i = 0; i < s.vertices.size(); ++i) {
      const PhasePoint& p = s.vertices[i];
      const PhasePoint& q = s.vertices[(i + 1) % s.vertices.size()];
      l += std::hypot(q.x - p.x, q.xi - p.xi);
    }
    return l;
  }
};

struct BaseContains {
  PhasePoint p;
  bool operator()(const Disk& s) const { return std::hypot(p.x, p.xi) <= s.radius; }
  bool operator()(const Annulus& s) const {
    const double r = std::hypot(p.x, p.xi);
    return s.inner <= r && r <= s.outer;
  }
  bool operator()(const Rect& s) const { return s.a <= p.x && p.x <= s.b && s.c <= p.xi && p.xi <= s.d; }
  bool operator()(const Polygon& s) const {
    for (const auto& t : s.triangles) {
      if (point_in_triangle(p, s.vertices[t[0]], s.vertices[t[1]], s.vertices[t[2]])) return true;
    }
    return false;
  }
};

struct BaseBoundingRadius {
  double operator()(const Disk& s) const { return s.radius; }
  double operator()(const Annulus& s) const { return s.outer; }
  double operator()(const Rect& s) const {
    return std::max({std::hypot(s.a, s.c), std::hypot(s.a, s.d), std::hypot(s.b, s.c), std::hypot(s.b, s.d)});
  }
  double operator()(const Polygon& s) const {
    double r = 0.0;
    for (const auto& v : s.vertices) r = std::max(r, std::hypot(v.x, v.xi));
    return r;
  }
};

void polar_rule(double inner, double outer, std::size_t order, std::size_t angular, Quadrature2D& q) {
  const QuadratureRule radial = gauss_legendre(order, inner, outer);
  const double dtheta = 2.0 * kPi / static_cast<double>(angular);
  q.nodes.reserve(order * angular);
  q.weights.reserve(order * angular);
  for (std::size_t a = 0; a < radial.size(); ++a) {
    const double rho = radial.nodes[a];
    const double w = radial.weights[a] * rho * dtheta;
    for (std::size_t b = 0; b < angular; ++b) {
      const double theta = (static_cast<double>(b) + 0.5) * dtheta;
      q.nodes.push_back({rho * std::cos(theta), rho * std::sin(theta)});
      q.weights.push_back(w);
    }
  }
}

void triangle_rule(PhasePoint A, PhasePoint B, PhasePoint C, std::size_t order, Quadrature2D& q) {
  // Collapsed square: P = A + u (B - A) + u v (C - B), Jacobian 2 |T| u.
  const QuadratureRule g = gauss_legendre(order, 0.0, 1.0);
  const double twice_area = cross(A, B, C);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double u = g.nodes[i];
    for (std::size_t k = 0; k < g.size(); ++k) {
      const double v = g.nodes[k];
      q.nodes.push_back({A.x + u * (B.x - A.x) + u * v * (C.x - B.x),
                         A.xi + u * (B.xi - A.xi) + u * v * (C.xi - B.xi)});
      q.weights.push_back(g.weights[i] * g.weights[k] * twice_area * u);
    }
  }
}

}  // namespace

PhaseDomain PhaseDomain::disk(double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) fail(ErrorCode::kDomain, "disk: radius must be positive");
  return PhaseDomain(Disk{radius}, "disk:" + fmt(radius));
}

PhaseDomain PhaseDomain::disk_with_area(double area) {
  if (!(area > 0.0)) fail(ErrorCode::kDomain, "disk: area must be positive");
  return disk(std::sqrt(area / kPi));
}

PhaseDomain PhaseDomain::annulus(double inner, double outer) {
  if (!(inner >= 0.0) || !(outer > inner) || !std::isfinite(outer)) {
    fail(ErrorCode::kDomain, "annulus: requires 0 <= r0 < R");
  }
  return PhaseDomain(Annulus{inner, outer}, "annulus:" + fmt(inner) + "," + fmt(outer));
}

PhaseDomain PhaseDomain::rect(double a, double b, double c, double d) {
  if (!(a < b) || !(c < d)) fail(ErrorCode::kDomain, "rect: requires a < b and c < d");
  return PhaseDomain(Rect{a, b, c, d}, "rect:" + fmt(a) + "," + fmt(b) + "," + fmt(c) + "," + fmt(d));
}

PhaseDomain PhaseDomain::polygon(std::vector<PhasePoint> vertices) {
  if (vertices.size() < 3) fail(ErrorCode::kDegenerateGeometry, "polygon: needs at least 3 vertices");
  // Drop a closing vertex equal to the first.
  if (vertices.front().x == vertices.back().x && vertices.front().xi == vertices.back().xi) vertices.pop_back();
  if (vertices.size() < 3) fail(ErrorCode::kDegenerateGeometry, "polygon: needs at least 3 vertices");
  const std::size_t n = vertices.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = i + 1; k < n; ++k) {
      const bool adjacent = (k == i + 1) || (i == 0 && k == n - 1);
      if (adjacent) continue;
      if (segments_intersect(vertices[i], vertices[(i + 1) % n], vertices[k], vertices[(k + 1) % n])) {
        fail(ErrorCode::kDegenerateGeometry, "polygon: self-intersecting boundary");
      }
    }
  }
  double area = signed_area(vertices);
  double scale = 0.0;
  for (const auto& v : vertices) scale = std::max({scale, std::abs(v.x), std::abs(v.xi)});
  if (std::abs(area) <= 1e-14 * scale * scale) fail(ErrorCode::kDegenerateGeometry, "polygon: zero area");
  if (area < 0) std::reverse(vertices.begin(), vertices.end());
  Polygon poly;
  poly.vertices = std::move(vertices);
  poly.triangles = triangulate(poly.vertices);
  return PhaseDomain(std::move(poly), "poly:" + std::to_string(n) + "-gon");
}

PhaseDomain PhaseDomain::load_polygon(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIo, "polygon: cannot open '" + path + "'");
  std::vector<PhasePoint> v;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    double x = 0.0;
    double xi = 0.0;
    if (!(ls >> x)) continue;
    if (!(ls >> xi)) fail(ErrorCode::kParse, path + ":" + std::to_string(line_no) + ": expected 'x y'");
    v.push_back({x, xi});
  }
  PhaseDomain d = polygon(std::move(v));
  d.descriptor_ = "poly:@" + path;
  return d;
}

PhaseDomain PhaseDomain::parse(const std::string& descriptor) {
  const auto colon = descriptor.find(':');
  if (colon == std::string::npos) fail(ErrorCode::kParse, "domain descriptor needs 'kind:params': " + descriptor);
  const std::string kind = descriptor.substr(0, colon);
  const std::string params = descriptor.substr(colon + 1);
  if (kind == "disk") return disk(parse_list(params, 1, "disk")[0]);
  if (kind == "annulus") {
    const auto v = parse_list(params, 2, "annulus");
    return annulus(v[0], v[1]);
  }
  if (kind == "rect") {
    const auto v = parse_list(params, 4, "rect");
    return rect(v[0], v[1], v[2], v[3]);
  }
  if (kind == "poly") {
    if (params.empty() || params[0] != '@') fail(ErrorCode::kParse, "poly descriptor must be 'poly:@file'");
    return load_polygon(params.substr(1));
  }
  fail(ErrorCode::kParse, "unknown domain kind '" + kind + "'");
}

PhaseDomain PhaseDomain::scaled(double m) const {
  if (!(m > 0.0) || !std::isfinite(m)) fail(ErrorCode::kDomain, "scaled: factor must be positive");
  PhaseDomain d = *this;
  d.scale_ = scale_ * m;
  d.descriptor_ = fmt(m) + "*" + descriptor_;
  return d;
}

double PhaseDomain::measure() const { return scale_ * scale_ * std::visit(BaseMeasure{}, shape_); }

double PhaseDomain::perimeter() const { return scale_ * std::visit(BasePerimeter{}, shape_); }

bool PhaseDomain::contains(PhasePoint p) const {
  return std::visit(BaseContains{{p.x / scale_, p.xi / scale_}}, shape_);
}

double PhaseDomain::bounding_radius() const { return scale_ * std::visit(BaseBoundingRadius{}, shape_); }

bool PhaseDomain::is_radial() const {
  return std::holds_alternative<Disk>(shape_) || std::holds_alternative<Annulus>(shape_);
}

std::array<double, 2> PhaseDomain::radial_extent() const {
  if (const auto* d = std::get_if<Disk>(&shape_)) return {0.0, scale_ * d->radius};
  if (const auto* a = std::get_if<Annulus>(&shape_)) return {scale_ * a->inner, scale_ * a->outer};
  fail(ErrorCode::kInvalidArgument, "radial_extent: domain is not a disk or annulus");
}

std::size_t n_omega(const PhaseDomain& d) {
  const double m = d.measure();
  if (!(m > 0.0)) fail(ErrorCode::kDomain, "n_omega: domain has zero measure");
  const double floor_m = std::floor(m);
  if (m - floor_m <= 1e-9 && floor_m >= 1.0) return static_cast<std::size_t>(floor_m);
  return static_cast<std::size_t>(std::ceil(m));
}

Quadrature2D domain_quadrature(const PhaseDomain& d, std::size_t order, std::size_t angular_order) {
  if (order < 1) fail(ErrorCode::kDomain, "domain_quadrature: order must be >= 1");
  Quadrature2D q;
  const Shape& s = d.shape();
  if (const auto* disk = std::get_if<Disk>(&s)) {
    polar_rule(0.0, disk->radius, order, angular_order ? angular_order : std::max<std::size_t>(64, order), q);
  } else if (const auto* ann = std::get_if<Annulus>(&s)) {
    polar_rule(ann->inner, ann->outer, order, angular_order ? angular_order : std::max<std::size_t>(64, order), q);
  } else if (const auto* rect = std::get_if<Rect>(&s)) {
    const QuadratureRule gx = gauss_legendre(order, rect->a, rect->b);
    const QuadratureRule gy = gauss_legendre(order, rect->c, rect->d);
    q.nodes.reserve(order * order);
    q.weights.reserve(order * order);
    for (std::size_t i = 0; i < order; ++i) {
      for (std::size_t k = 0; k < order; ++k) {
        q.nodes.push_back({gx.nodes[i], gy.nodes[k]});
        q.weights.push_back(gx.weights[i] * gy.weights[k]);
      }
    }
  } else {
    const auto& poly = std::get<Polygon>(s);
    for (const auto& t : poly.triangles) {
      triangle_rule(poly.vertices[t[0]], poly.vertices[t[1]], poly.vertices[t[2]], order, q);
    }
  }
  // Scaling is applied to the base rule so that m * Omega reuses it exactly.
  const double m = d.scale();
  if (m != 1.0) {
    for (auto& p : q.nodes) p = {m * p.x, m * p.xi};
    for (auto& w : q.weights) w *= m * m;
  }
  return q;
}

}  // namespace whens
