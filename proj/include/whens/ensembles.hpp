// Copyright 2026 The whens Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "whens/domains.hpp"
#include "whens/phasespace.hpp"
#include "whens/toeplitz.hpp"

namespace whens {

/// Sorted set of distinct nonnegative integers.
class IndexSet {
 public:
  IndexSet() = default;
  /// Sorts; throws kInvalidArgument on duplicates.
  explicit IndexSet(std::vector<std::size_t> values);
  IndexSet(std::initializer_list<std::size_t> values) : IndexSet(std::vector<std::size_t>(values)) {}
  /// {0, ..., n-1}
  static IndexSet range(std::size_t n);

  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }
  bool contains(std::size_t v) const;
  const std::vector<std::size_t>& values() const { return values_; }
  std::size_t max() const { return values_.empty() ? 0 : values_.back(); }

  friend bool operator==(const IndexSet&, const IndexSet&) = default;

 private:
  std::vector<std::size_t> values_;
};

IndexSet symmetric_difference(const IndexSet& a, const IndexSet& b);

/// Finite-rank projection kernel K(p, q) = sum_i phi_i(p) conj(phi_i(q)) over an
/// orthonormal family phi_i of phase-plane functions. Two families:
///  - spectral: phi_i = sum_k v_{k,i} V_g h_k for chosen eigenvector columns;
///  - pure polyanalytic: phi_j = H_{j,r}(z, conj z) e^{-pi |z|^2 / 2}, j in J.
class ProjectionKernel {
 public:
  enum class Family { kSpectral, kPurePoly };

  /// positions index the columns of s (sorted spectrum order).
  static ProjectionKernel spectral(const SpectralDecomposition& s, const ToeplitzMatrix& t,
                                   const IndexSet& positions);
  static ProjectionKernel pure_poly(int r, const IndexSet& j);

  Family family() const { return family_; }
  std::size_t rank() const { return index_set_.size(); }
  const IndexSet& index_set() const { return index_set_; }
  /// Landau level r of the pure family; -1 for the spectral family.
  int level() const { return level_; }
  const std::string& descriptor() const { return descriptor_; }

  /// phi_i(p) for i = 0 .. rank-1.
  void evaluate(PhasePoint p, std::span<cplx> out) const;
  std::vector<cplx> evaluate(PhasePoint p) const;
  cplx operator()(PhasePoint p, PhasePoint q) const;
  double intensity(PhasePoint p) const;

  /// Radius of a centered disk holding at least (1 - tol) of the trace.
  double envelope_radius(double tol = 1e-6) const;

 private:
  Family family_ = Family::kPurePoly;
  IndexSet index_set_;
  int level_ = -1;
  WindowSpec window_;
  Eigen::MatrixXcd coeffs_;  // M x rank, spectral family only
  std::string descriptor_;
};

/// The finite WH ensemble: the top n_omega(d) positions of the spectrum.
/// Throws kRankDeficient if one of them has a zero eigenvalue.
ProjectionKernel finite_wh_kernel(const SpectralDecomposition& s, const ToeplitzMatrix& t);

/// K_{r,N}: the pure polyanalytic family with J = {0, ..., N-1}.
ProjectionKernel pure_poly_kernel(int r, std::size_t N);

/// The finite Ginibre kernel K_N = pure_poly_kernel(0, N).
inline ProjectionKernel ginibre_kernel(std::size_t N) { return pure_poly_kernel(0, N); }

inline double intensity(const ProjectionKernel& k, PhasePoint p) { return k.intensity(p); }

struct IntensityGrid {
  double x0 = 0.0, x1 = 0.0, xi0 = 0.0, xi1 = 0.0;
  std::size_t nx = 0, nxi = 0;
  /// Row-major in xi: values[i * nx + k] at (x_k, xi_i).
  std::vector<double> values;

  PhasePoint point(std::size_t k, std::size_t i) const;
};

/// Intensity on an nx x nxi grid including the box corners.
IntensityGrid intensity_grid(const ProjectionKernel& k, double x0, double x1, double xi0, double xi1,
                             std::size_t nx, std::size_t nxi);

/// ||rho_I - 1_Omega||_1 = #I - |Omega| + 2 sum_{j not in I} lambda_j, where the
/// positions in I index the sorted spectrum and the mass beyond the basis
/// (t.tail_mass) counts as outside I.
double l1_deviation_spectral(const SpectralDecomposition& s, const ToeplitzMatrix& t, const IndexSet& I);

/// ||rho_{r,N} - 1_D||_1 for the centered disk D of area N, by the same
/// identity with the radial eigenvalues mu^r_j: 2 (N - sum_{j<N} mu^r_j).
double l1_deviation_poly(int r, std::size_t N);

/// Positions of the top N values of mu^r_{j,R} (pi R^2 = area) over
/// j < max(2N, N + 64), ties within 1e-12 broken towards smaller j. A tie
/// straddling the cut appends a message to *warnings.
IndexSet poly_index_set_for_area(int r, std::size_t N, double area,
                                 std::vector<std::string>* warnings = nullptr);

/// I_{r,N}: poly_index_set_for_area with area N.
IndexSet poly_index_set(int r, std::size_t N, std::vector<std::string>* warnings = nullptr);

/// Trace-norm distance between the WH kernel of h_r on the disk of area N and
/// K_{r,N}: |I_{r,N} symmetric-difference {0..N-1}|.
double trace_distance_poly(int r, std::size_t N);

/// Radius in [lo, hi] where mu^r_{j0,R} = mu^r_{j1,R}, by bisection to `tol`.
/// Throws kDomain if the difference does not change sign on the bracket.
double mu_crossing_radius(int r, int j0, int j1, double lo, double hi, double tol = 1e-14);

struct ComparisonRow {
  std::size_t N = 0;
  int r = 0;
  double symdiff = 0.0;
  double sqrt_n = 0.0;
  double ratio = 0.0;
};

std::vector<ComparisonRow> compare_sweep(int r, std::span<const std::size_t> Ns);

}  // namespace whens
