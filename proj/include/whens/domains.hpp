// Copyright 2026 The whens Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "whens/phasespace.hpp"

namespace whens {

struct Disk {
  double radius = 1.0;
};

struct Annulus {
  double inner = 0.5;
  double outer = 1.0;
};

struct Rect {
  double a = 0.0, b = 1.0;  // x range
  double c = 0.0, d = 1.0;  // xi range
};

struct Polygon {
  std::vector<PhasePoint> vertices;            // counterclockwise
  std::vector<std::array<std::size_t, 3>> triangles;  // ear-clipping triangulation
};

using Shape = std::variant<Disk, Annulus, Rect, Polygon>;

/// 2-D rule: nodes inside the domain, positive weights summing to its measure.
struct Quadrature2D {
  std::vector<PhasePoint> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }

  template <class F>
  double integrate(F&& f) const {
    double s = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * f(nodes[i]);
    return s;
  }
};

/// A finite-perimeter region of the phase plane. Disks and annuli are centered
/// at the origin. Immutable once built.
class PhaseDomain {
 public:
  static PhaseDomain disk(double radius);
  /// Disk centered at the origin with pi R^2 = area.
  static PhaseDomain disk_with_area(double area);
  static PhaseDomain annulus(double inner, double outer);
  static PhaseDomain rect(double a, double b, double c, double d);
  /// Throws kDegenerateGeometry on self-intersecting or zero-area input.
  static PhaseDomain polygon(std::vector<PhasePoint> vertices);
  static PhaseDomain load_polygon(const std::string& path);
  /// "disk:R", "annulus:r0,R", "rect:a,b,c,d" or "poly:@file".
  static PhaseDomain parse(const std::string& descriptor);

  /// The dilation m * Omega.
  PhaseDomain scaled(double m) const;

  double measure() const;
  double perimeter() const;
  bool contains(PhasePoint p) const;
  /// Radius of a centered disk containing the domain.
  double bounding_radius() const;
  /// True for disks and annuli (rotation invariant about the origin).
  bool is_radial() const;
  /// Radial extent [inner, outer] of a disk or annulus after scaling.
  std::array<double, 2> radial_extent() const;

  const Shape& shape() const { return shape_; }
  double scale() const { return scale_; }
  const std::string& descriptor() const { return descriptor_; }

 private:
  PhaseDomain(Shape s, std::string descriptor) : shape_(std::move(s)), descriptor_(std::move(descriptor)) {}

  Shape shape_;
  double scale_ = 1.0;
  std::string descriptor_;
};

/// Number of points of the finite ensemble: the least integer >= |Omega|.
/// Measures within 1e-9 above an integer round down to it. Throws kDomain on
/// zero measure.
std::size_t n_omega(const PhaseDomain& d);

/// Disks and annuli: Gauss-Legendre in the radius times a uniform angular rule
/// with angular_order nodes (default max(64, order)). Rectangles: tensor
/// Gauss-Legendre. Polygons: collapsed Gauss-Legendre on each triangle.
Quadrature2D domain_quadrature(const PhaseDomain& d, std::size_t order, std::size_t angular_order = 0);

}  // namespace whens
