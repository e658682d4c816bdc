// Copyright 2026 The whens Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "whens/domains.hpp"
#include "whens/phasespace.hpp"

namespace whens {

struct AssemblyOptions {
  /// Radial (or per-axis) Gauss-Legendre order; 0 selects 4M + 32.
  std::size_t order = 0;
  /// Angular nodes for disks and annuli; 0 selects max(64, 4M).
  std::size_t angular_order = 0;
  /// Skip the rotational shortcut for centered disks/annuli and integrate on
  /// the full 2-D rule.
  bool force_generic = false;
};

/// Galerkin matrix of the localization operator in the Hermite basis:
///   A[j][k] = <H h_k, h_j> = int_Omega V_g h_k conj(V_g h_j).
/// Eigenvectors of A are therefore Hermite coefficient vectors directly.
struct ToeplitzMatrix {
  WindowSpec window;
  PhaseDomain domain = PhaseDomain::disk(1.0);
  std::size_t size = 0;
  Eigen::MatrixXcd entries;
  /// |Omega| - trace(A): mass carried by basis indices >= size.
  double tail_mass = 0.0;
  std::size_t order = 0;
  std::size_t angular_order = 0;
  bool rotational_path = false;
  std::vector<std::string> warnings;

  double trace() const;
};

/// M = max(2 n_omega, n_omega + 64).
std::size_t default_basis_size(const PhaseDomain& d);

/// Throws kInvalidArgument when M < n_omega(d). For a pure Hermite window on a
/// centered disk or annulus the result is checked to be diagonal to 1e-10
/// (kNumerical otherwise).
ToeplitzMatrix assemble(const WindowSpec& g, const PhaseDomain& d, std::size_t M,
                        const AssemblyOptions& opts = {});

/// Galerkin matrix on the centered annulus inner <= |z| <= outer (inner = 0 for
/// a disk) without basis-size checks; order 0 selects 4M + 32.
Eigen::MatrixXcd radial_gram(const WindowSpec& g, double inner, double outer, std::size_t M,
                             std::size_t order = 0);

struct SpectralDecomposition {
  /// Non-increasing, clamped to [0, 1].
  Eigen::VectorXd eigenvalues;
  /// Orthonormal columns of Hermite coefficients.
  Eigen::MatrixXcd eigenvectors;
  /// argmax_k |v_k| for each column.
  std::vector<std::size_t> dominant_index;
  std::string tie_break;
  std::size_t tie_groups = 0;
  /// max_j ||A v_j - lambda_j v_j|| / ||A|| before clamping.
  double residual = 0.0;
  /// Largest distance of a raw eigenvalue outside [0, 1].
  double clamped = 0.0;
};

/// Eigenvalues within 1e-12 of each other are ordered by ascending dominant
/// Hermite index. Throws kConvergence if the solver fails or the residual
/// exceeds 1e-9 ||A||.
SpectralDecomposition eigendecompose(const Eigen::MatrixXcd& a);
SpectralDecomposition eigendecompose(const ToeplitzMatrix& t);

/// mu^r_{j,R} = int_{|z|<R} |H_{j,r}|^2 e^{-pi |z|^2} dz; order 0 selects
/// 4 max(j, r) + 32.
double mu_radial(int r, int j, double R, std::size_t order = 0);

/// mu^r_{j,R} for j = 0 .. count-1 on one shared rule of order 4 count + 32.
std::vector<double> mu_radial_all(int r, std::size_t count, double R);

/// #{j : lambda_j > 1 - delta}. Throws kInvalidArgument unless 0 < delta < 1.
std::size_t weyl_count(const SpectralDecomposition& s, double delta);

struct DoubleOrthogonality {
  double max_off_diagonal = 0.0;
  double max_diagonal_error = 0.0;
  Eigen::MatrixXcd gram;
};

/// G[i][j] = int_Omega p_j conj(p_i) over the leading `count` eigenfunctions
/// (0 = all), by domain quadrature of order `order` (0 = the assembly order).
/// Throws kNumerical if some |G[j][j] - lambda_j| > 1e-6.
DoubleOrthogonality double_orthogonality_check(const SpectralDecomposition& s,
                                               const ToeplitzMatrix& t, std::size_t count = 0,
                                               std::size_t order = 0);

/// Rows "j,lambda" (j from 0), full precision.
void write_spectrum_csv(std::ostream& os, const SpectralDecomposition& s);

/// Header "M,window,domain", then "column,row,re,im" in column-major order.
void write_eigenvectors_csv(std::ostream& os, const SpectralDecomposition& s,
                            const ToeplitzMatrix& t);

}  // namespace whens
