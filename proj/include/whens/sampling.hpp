// Copyright 2026 The whens Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "whens/ensembles.hpp"
#include "whens/phasespace.hpp"

namespace whens {

struct SamplerStats {
  std::uint64_t proposals = 0;
  std::uint64_t accepted = 0;
};

struct PointConfiguration {
  std::vector<PhasePoint> points;
  std::uint64_t seed = 0;
  std::uint64_t sample_index = 0;
  std::string kernel;
  SamplerStats stats;
};

inline constexpr std::uint64_t kRejectionCap = 1000000;

/// Sequential sampler for a projection DPP: point i+1 is drawn from the
/// conditional intensity ||phi(z) - P_i phi(z)||^2 by rejection from the
/// uniform law on the envelope disk (radius k.envelope_radius()). Stream
/// stream_key(seed, sample_index). Throws kRejectionCap after 10^6 rejections
/// for one point.
PointConfiguration sample_dpp(const ProjectionKernel& k, std::uint64_t seed, std::uint64_t sample_index = 0);

/// `count` independent configurations, sample i on stream (seed, i); the result
/// does not depend on the number of threads.
std::vector<PointConfiguration> sample_dpp_batch(const ProjectionKernel& k, std::uint64_t seed,
                                                 std::size_t count);

/// Law of the radius Y_j of level r:
///   f(x) = 2 pi^{j-r+1} r!/j! x^{2(j-r)+1} [L_r^{j-r}(pi x^2)]^2 e^{-pi x^2}.
/// The CDF is tabulated on 4096 panels by 20-point Gauss-Legendre; between
/// table nodes it is completed by one more panel integral. For r = 0 the CDF
/// is the Gamma law P(j+1, pi x^2).
class RadialLaw {
 public:
  RadialLaw(int r, int j);

  int level() const { return r_; }
  int index() const { return j_; }
  double density(double x) const;
  /// Density of Y^2 as displayed alongside f: pi^{j-r+1} r!/j! u^{j-r} [L_r^{j-r}(pi u)]^2 e^{-pi u}.
  double density_squared(double u) const;
  double cdf(double x) const;
  /// Smallest x with cdf(x) >= u, refined to 1e-12.
  double inverse_cdf(double u) const;
  /// Table total before any normalization (should be 1).
  double table_mass() const { return cdf_.back(); }
  double support_end() const { return x_max_; }
  const std::vector<double>& table_nodes() const { return x_; }
  const std::vector<double>& table_cdf() const { return cdf_; }

 private:
  double panel_integral(double a, double b) const;

  int r_;
  int j_;
  double log_norm_;
  double x_max_;
  std::vector<double> x_;
  std::vector<double> cdf_;
};

/// One independent draw Y_j per j in J (in J's order) on stream (seed, index).
std::vector<double> sample_kostlan(int r, const IndexSet& J, std::uint64_t seed, std::uint64_t index = 0);

/// prod_{j in J} P(Y_j >= R). Throws kNumerical if some factor differs from
/// 1 - mu^r_{j,R} by more than 1e-8.
double hole_probability(int r, const IndexSet& J, double R);

/// max over x in [0, x_max] of |f_{Y^2}(x^2) 2x - f_Y(x)| on a uniform grid.
double density_consistency(int r, int j, std::size_t grid = 2001);

struct AnnulusRow {
  double lo = 0.0;
  double hi = 0.0;  // +inf for the last annulus
  double expected = 0.0;
  double observed = 0.0;
  double sigma = 0.0;
  bool pass = false;
};

struct RadiiReport {
  std::vector<AnnulusRow> rows;
  std::size_t configurations = 0;
  double chi_square = 0.0;
  std::size_t dof = 0;
  double p_value = 0.0;
  bool all_pass = false;
};

/// Counts |z| of all sample points in `annuli` rings of equal predicted mass
/// under the independent-radii law of (r, J); per-ring 3 sigma bands plus a
/// chi-square statistic on the first annuli-1 counts. Throws
/// kInsufficientSamples below 1000 configurations.
RadiiReport radii_distribution_test(const std::vector<PointConfiguration>& samples, int r, const IndexSet& J,
                                    std::size_t annuli = 10);

/// Same test on bare radii, one vector of |J| radii per configuration.
RadiiReport radii_distribution_test(const std::vector<std::vector<double>>& radii, int r, const IndexSet& J,
                                    std::size_t annuli = 10);

/// Rows "sample_id,x,xi".
void write_samples_csv(std::ostream& os, const std::vector<PointConfiguration>& samples);

/// Rows "annulus_lo,annulus_hi,expected,observed,sigma,pass".
void write_radii_report_csv(std::ostream& os, const RadiiReport& report);

}  // namespace whens
