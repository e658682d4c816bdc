// Copyright 2026 The whens Authors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line driver. Links only the C interface.

#include <CLI11.hpp>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "svg.hpp"
#include "whens/whens.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitWarning = 3;
constexpr int kExitCheckFailed = 4;

struct CliError {
  int code;
  std::string message;
};

void check(whens_status s) {
  if (s == WHENS_OK) return;
  const bool input = s == WHENS_INVALID_ARGUMENT || s == WHENS_DOMAIN_ERROR || s == WHENS_PARSE_ERROR ||
                     s == WHENS_IO_ERROR || s == WHENS_DEGENERATE_GEOMETRY;
  throw CliError{input ? kExitUsage : kExitWarning,
                 std::string(whens_status_name(s)) + ": " + whens_last_error()};
}

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using Window = std::unique_ptr<whens_window, Deleter<whens_window, whens_window_free>>;
using Domain = std::unique_ptr<whens_domain, Deleter<whens_domain, whens_domain_free>>;
using Toeplitz = std::unique_ptr<whens_toeplitz, Deleter<whens_toeplitz, whens_toeplitz_free>>;
using Spectrum = std::unique_ptr<whens_spectrum, Deleter<whens_spectrum, whens_spectrum_free>>;
using Kernel = std::unique_ptr<whens_kernel, Deleter<whens_kernel, whens_kernel_free>>;
using Samples = std::unique_ptr<whens_samples, Deleter<whens_samples, whens_samples_free>>;

struct Config {
  std::string command;
  std::string window = "hermite:0";
  std::string domain;
  std::size_t basis = 0;
  std::size_t quad = 0;
  std::uint64_t seed = 1;
  std::string out = ".";
  std::size_t samples = 0;
  bool svg = false;
  bool check = false;
  bool allow_warnings = false;
  bool eigenvectors = false;
  bool independent = false;
  int r = 0;
  std::string n_list;
  std::string areas = "25,100,400";
  double delta = 0.5;
  std::size_t grid = 101;
  std::size_t annuli = 10;
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <class T>
std::vector<T> parse_list(const std::string& s, const char* what) {
  std::vector<T> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::istringstream is(item);
    T v{};
    if (!(is >> v) || !is.eof()) throw CliError{kExitUsage, std::string("invalid value in --") + what + ": '" + item + "'"};
    out.push_back(v);
  }
  if (out.empty()) throw CliError{kExitUsage, std::string("--") + what + " needs at least one value"};
  return out;
}

class Provenance {
 public:
  explicit Provenance(const Config& c) {
    add("whens", whens_version());
    add("command", c.command);
  }
  void add(const std::string& key, const std::string& value) { text_ += "# " + key + ": " + value + "\n"; }
  void add(const std::string& key, double value) { add(key, fmt(value)); }
  void add_size(const std::string& key, std::size_t value) { add(key, std::to_string(value)); }
  const std::string& str() const { return text_; }

 private:
  std::string text_;
};

std::string out_path(const Config& c, const std::string& name) {
  std::filesystem::create_directories(c.out);
  return (std::filesystem::path(c.out) / name).string();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  os << text;
  if (!os) throw CliError{kExitUsage, "cannot write '" + path + "'"};
}

struct Assembled {
  Window window;
  Domain domain;
  Toeplitz toeplitz;
  Spectrum spectrum;
  std::size_t n_omega = 0;
  std::vector<double> eigenvalues;
  std::vector<std::string> warnings;
};

Assembled assemble(const std::string& window, const std::string& domain, std::size_t basis, std::size_t quad) {
  Assembled a;
  whens_window* w = nullptr;
  check(whens_window_parse(window.c_str(), &w));
  a.window.reset(w);
  whens_domain* d = nullptr;
  check(whens_domain_parse(domain.c_str(), &d));
  a.domain.reset(d);
  check(whens_n_omega(a.domain.get(), &a.n_omega));
  std::size_t M = basis;
  if (M == 0) check(whens_default_basis_size(a.domain.get(), &M));
  whens_assembly_options opts{quad, 0, 0};
  whens_toeplitz* t = nullptr;
  check(whens_toeplitz_assemble(a.window.get(), a.domain.get(), M, &opts, &t));
  a.toeplitz.reset(t);
  for (std::size_t i = 0; i < whens_toeplitz_warning_count(t); ++i) a.warnings.push_back(whens_toeplitz_warning(t, i));
  whens_spectrum* s = nullptr;
  check(whens_eigendecompose(t, &s));
  a.spectrum.reset(s);
  a.eigenvalues.resize(whens_spectrum_size(s));
  check(whens_spectrum_eigenvalues(s, a.eigenvalues.data(), a.eigenvalues.size()));
  return a;
}

void add_assembly(Provenance& p, const Config& c, const Assembled& a) {
  p.add("window", c.window);
  p.add("domain", c.domain);
  p.add("basis", c.basis == 0 ? "default" : std::to_string(c.basis));
  p.add("quad", c.quad == 0 ? "default" : std::to_string(c.quad));
  p.add_size("M", whens_toeplitz_size(a.toeplitz.get()));
  p.add_size("quadrature_order", whens_toeplitz_order(a.toeplitz.get()));
  p.add("measure", whens_domain_measure(a.domain.get()));
  p.add_size("n_omega", a.n_omega);
  p.add("tail_mass", whens_toeplitz_tail_mass(a.toeplitz.get()));
  p.add("tie_break", whens_spectrum_tie_break(a.spectrum.get()));
}

int report_warnings(const Config& c, const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
  return !warnings.empty() && !c.allow_warnings ? kExitWarning : kExitOk;
}

int cmd_spectrum(const Config& c) {
  if (c.domain.empty()) throw CliError{kExitUsage, "spectrum: --domain is required"};
  Assembled a = assemble(c.window, c.domain, c.basis, c.quad);
  Provenance p(c);
  add_assembly(p, c, a);
  check(whens_write_spectrum_csv(a.spectrum.get(), out_path(c, "spectrum.csv").c_str(), p.str().c_str()));
  if (c.eigenvectors) {
    check(whens_write_eigenvectors_csv(a.spectrum.get(), a.toeplitz.get(), out_path(c, "eigenvectors.csv").c_str(),
                                       p.str().c_str()));
  }
  std::size_t above = 0;
  check(whens_weyl_count(a.spectrum.get(), 0.5, &above));
  if (c.svg) {
    whens_cli::Series s;
    s.markers = true;
    for (std::size_t j = 0; j < a.eigenvalues.size(); ++j) {
      s.x.push_back(static_cast<double>(j));
      s.y.push_back(a.eigenvalues[j]);
    }
    write_text(out_path(c, "spectrum.svg"),
               whens_cli::svg_plot({s}, "eigenvalues: " + c.window + " on " + c.domain, "j", "lambda_j"));
  }
  std::cout << "n_omega=" << a.n_omega << " above_half=" << above
            << " trace=" << fmt(whens_toeplitz_trace(a.toeplitz.get()))
            << " tail_mass=" << fmt(whens_toeplitz_tail_mass(a.toeplitz.get())) << "\n";
  return report_warnings(c, a.warnings);
}

int cmd_intensity(const Config& c) {
  Provenance p(c);
  Kernel kernel;
  double l1 = 0.0;
  double half = 0.0;
  std::vector<std::string> warnings;
  if (!c.n_list.empty()) {
    const auto ns = parse_list<std::size_t>(c.n_list, "N");
    if (ns.size() != 1) throw CliError{kExitUsage, "intensity: --N takes a single value"};
    whens_kernel* k = nullptr;
    check(whens_kernel_pure_poly(c.r, ns[0], &k));
    kernel.reset(k);
    check(whens_l1_deviation_poly(c.r, ns[0], &l1));
    p.add("kernel", whens_kernel_descriptor(k));
    p.add("r", std::to_string(c.r));
    p.add_size("N", ns[0]);
    half = 1.5 * std::sqrt(static_cast<double>(ns[0]) / std::numbers::pi) + 1.0;
    p.add("l1_reference_domain", "disk of area N");
  } else {
    if (c.domain.empty()) throw CliError{kExitUsage, "intensity: --domain or --N is required"};
    Assembled a = assemble(c.window, c.domain, c.basis, c.quad);
    warnings = a.warnings;
    add_assembly(p, c, a);
    whens_kernel* k = nullptr;
    check(whens_kernel_finite_wh(a.spectrum.get(), a.toeplitz.get(), &k));
    kernel.reset(k);
    std::vector<std::size_t> top(a.n_omega);
    for (std::size_t i = 0; i < top.size(); ++i) top[i] = i;
    check(whens_l1_deviation_spectral(a.spectrum.get(), a.toeplitz.get(), top.data(), top.size(), &l1));
    half = 1.25 * whens_domain_bounding_radius(a.domain.get()) + 1.0;
  }
  const std::size_t n = c.grid;
  if (n < 2) throw CliError{kExitUsage, "intensity: --grid must be >= 2"};
  std::vector<double> values(n * n);
  check(whens_intensity_grid(kernel.get(), -half, half, -half, half, n, n, values.data()));
  p.add("grid", std::to_string(n) + "x" + std::to_string(n) + " on [" + fmt(-half) + "," + fmt(half) + "]^2");
  p.add("l1_deviation", l1);

  std::string csv = p.str() + "x,xi,rho\n";
  char buf[96];
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const double x = -half + 2.0 * half * static_cast<double>(k) / static_cast<double>(n - 1);
      const double xi = -half + 2.0 * half * static_cast<double>(i) / static_cast<double>(n - 1);
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", x, xi, values[i * n + k]);
      csv += buf;
    }
  }
  write_text(out_path(c, "intensity.csv"), csv);
  if (c.svg) {
    write_text(out_path(c, "intensity.svg"),
               whens_cli::svg_heatmap(values, n, n, -half, half, -half, half, "one-point intensity"));
  }
  double center = 0.0;
  check(whens_intensity(kernel.get(), 0.0, 0.0, &center));
  std::cout << "l1_deviation=" << fmt(l1) << " rho(0)=" << fmt(center) << "\n";
  return report_warnings(c, warnings);
}

int cmd_compare(const Config& c) {
  const auto ns = parse_list<std::size_t>(c.n_list.empty() ? "25,100,400" : c.n_list, "N");
  Provenance p(c);
  p.add("r", std::to_string(c.r));
  p.add("N", c.n_list.empty() ? "25,100,400" : c.n_list);
  p.add("basis", "M = max(2N, N + 64)");
  p.add("quad", "radial Gauss-Legendre, 4M + 32 points");
  std::string csv = p.str() + "N,r,symdiff,sqrtN,ratio\n";
  std::vector<double> ratios;
  bool ok = true;
  char buf[128];
  for (std::size_t n : ns) {
    double d = 0.0;
    check(whens_trace_distance_poly(c.r, n, &d));
    const double ratio = d / std::sqrt(static_cast<double>(n));
    ratios.push_back(ratio);
    std::snprintf(buf, sizeof buf, "%zu,%d,%.17g,%.17g,%.17g\n", n, c.r, d, std::sqrt(static_cast<double>(n)), ratio);
    csv += buf;
    if (c.r == 0 && d != 0.0) ok = false;
  }
  for (double ratio : ratios) {
    if (ratio > 1.5 * ratios.front()) ok = false;
  }
  write_text(out_path(c, "compare.csv"), csv);
  double max_ratio = 0.0;
  for (double ratio : ratios) max_ratio = std::max(max_ratio, ratio);
  std::cout << "max_ratio=" << fmt(max_ratio);
  if (c.r >= 1) {
    double R = 0.0;
    if (whens_mu_crossing_radius(c.r, 0, 1, 1e-3, 3.0, &R) == WHENS_OK) std::cout << " crossing_radius=" << fmt(R);
  }
  std::cout << "\n";
  if (c.svg) {
    whens_cli::Series s;
    s.markers = true;
    for (std::size_t i = 0; i < ns.size(); ++i) {
      s.x.push_back(static_cast<double>(ns[i]));
      s.y.push_back(ratios[i]);
    }
    write_text(out_path(c, "compare.svg"), whens_cli::svg_plot({s}, "symmetric difference / sqrt(N)", "N", "ratio"));
  }
  return c.check && !ok ? kExitCheckFailed : kExitOk;
}

std::string radii_csv(const std::vector<whens_annulus_row>& rows) {
  std::string csv = "annulus_lo,annulus_hi,expected,observed,sigma,pass\n";
  char buf[192];
  for (const auto& row : rows) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%d\n", row.lo, row.hi, row.expected, row.observed,
                  row.sigma, row.pass);
    csv += buf;
  }
  return csv;
}

std::size_t single_n(const Config& c, const char* cmd) {
  const auto ns = parse_list<std::size_t>(c.n_list.empty() ? "5" : c.n_list, "N");
  if (ns.size() != 1) throw CliError{kExitUsage, std::string(cmd) + ": --N takes a single value"};
  return ns[0];
}

int cmd_sample(const Config& c) {
  Provenance p(c);
  Kernel kernel;
  std::vector<std::string> warnings;
  bool pure = c.domain.empty();
  std::size_t n = 0;
  if (pure) {
    n = single_n(c, "sample");
    whens_kernel* k = nullptr;
    check(whens_kernel_pure_poly(c.r, n, &k));
    kernel.reset(k);
    p.add("r", std::to_string(c.r));
    p.add_size("N", n);
  } else {
    Assembled a = assemble(c.window, c.domain, c.basis, c.quad);
    warnings = a.warnings;
    add_assembly(p, c, a);
    whens_kernel* k = nullptr;
    check(whens_kernel_finite_wh(a.spectrum.get(), a.toeplitz.get(), &k));
    kernel.reset(k);
  }
  const std::size_t count = c.samples ? c.samples : 1000;
  p.add("kernel", whens_kernel_descriptor(kernel.get()));
  p.add("seed", std::to_string(c.seed));
  p.add_size("samples", count);
  whens_samples* s = nullptr;
  check(whens_sample_dpp(kernel.get(), c.seed, count, &s));
  Samples samples(s);
  check(whens_write_samples_csv(s, out_path(c, "samples.csv").c_str(), p.str().c_str()));
  int code = report_warnings(c, warnings);
  if (pure && count >= 1000) {
    std::vector<std::size_t> J(n);
    for (std::size_t i = 0; i < n; ++i) J[i] = i;
    std::vector<whens_annulus_row> rows(c.annuli);
    whens_radii_summary sum{};
    check(whens_radii_test_samples(s, c.r, J.data(), J.size(), c.annuli, rows.data(), &sum));
    Provenance q = p;
    q.add("chi_square", sum.chi_square);
    q.add_size("dof", sum.dof);
    q.add("p_value", sum.p_value);
    write_text(out_path(c, "radii.csv"), q.str() + radii_csv(rows));
    std::cout << "annuli_pass=" << (sum.all_pass ? "yes" : "no") << " p_value=" << fmt(sum.p_value) << "\n";
    if (c.check && !sum.all_pass) code = kExitCheckFailed;
  }
  if (c.svg) {
    whens_cli::Series pts;
    pts.markers = true;
    std::vector<double> xy(2 * whens_samples_rank(s));
    for (std::size_t i = 0; i < std::min<std::size_t>(count, 50); ++i) {
      check(whens_samples_points(s, i, xy.data(), xy.size()));
      for (std::size_t k = 0; k < xy.size() / 2; ++k) {
        pts.x.push_back(xy[2 * k]);
        pts.y.push_back(xy[2 * k + 1]);
      }
    }
    write_text(out_path(c, "samples.svg"), whens_cli::svg_plot({pts}, "sampled points (first 50)", "x", "xi"));
  }
  std::cout << "samples=" << count << " proposals=" << whens_samples_proposals(s) << "\n";
  return code;
}

int cmd_kostlan(const Config& c) {
  const std::size_t n = single_n(c, "kostlan");
  const std::size_t count = c.samples ? c.samples : 10000;
  Provenance p(c);
  p.add("r", std::to_string(c.r));
  p.add_size("N", n);
  p.add("seed", std::to_string(c.seed));
  p.add_size("samples", count);
  p.add("source", c.independent ? "independent radii draws" : "determinantal sampler");
  std::vector<std::size_t> J(n);
  for (std::size_t i = 0; i < n; ++i) J[i] = i;

  // Radius where the predicted hole probability is 1/2.
  double lo = 1e-6;
  double hi = 1.0;
  double hole = 0.0;
  check(whens_hole_probability(c.r, J.data(), n, hi, &hole));
  while (hole > 0.5) {
    hi *= 2.0;
    check(whens_hole_probability(c.r, J.data(), n, hi, &hole));
  }
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    check(whens_hole_probability(c.r, J.data(), n, mid, &hole));
    (hole > 0.5 ? lo : hi) = mid;
  }
  const double R = 0.5 * (lo + hi);
  check(whens_hole_probability(c.r, J.data(), n, R, &hole));

  std::vector<double> radii(count * n);
  if (c.independent) {
    check(whens_sample_kostlan(c.r, J.data(), n, c.seed, count, radii.data()));
  } else {
    whens_kernel* k = nullptr;
    check(whens_kernel_pure_poly(c.r, n, &k));
    Kernel kernel(k);
    whens_samples* s = nullptr;
    check(whens_sample_dpp(k, c.seed, count, &s));
    Samples samples(s);
    std::vector<double> xy(2 * n);
    for (std::size_t i = 0; i < count; ++i) {
      check(whens_samples_points(s, i, xy.data(), xy.size()));
      for (std::size_t q = 0; q < n; ++q) radii[i * n + q] = std::hypot(xy[2 * q], xy[2 * q + 1]);
    }
  }
  std::size_t holes = 0;
  for (std::size_t i = 0; i < count; ++i) {
    bool empty = true;
    for (std::size_t q = 0; q < n; ++q) empty = empty && radii[i * n + q] >= R;
    holes += empty ? 1 : 0;
  }
  const double freq = static_cast<double>(holes) / static_cast<double>(count);
  const double sigma = std::sqrt(hole * (1.0 - hole) / static_cast<double>(count));
  const bool hole_pass = std::abs(freq - hole) <= 3.0 * sigma;

  std::vector<whens_annulus_row> rows(c.annuli);
  whens_radii_summary sum{};
  check(whens_radii_test_radii(radii.data(), count, c.r, J.data(), n, c.annuli, rows.data(), &sum));
  p.add("hole_radius", R);
  p.add("hole_predicted", hole);
  p.add("hole_observed", freq);
  p.add("hole_sigma", sigma);
  p.add("hole_pass", hole_pass ? "1" : "0");
  p.add("chi_square", sum.chi_square);
  p.add_size("dof", sum.dof);
  p.add("p_value", sum.p_value);
  write_text(out_path(c, "kostlan.csv"), p.str() + radii_csv(rows));
  if (c.svg) {
    whens_cli::Series e{{}, {}, "expected", true};
    whens_cli::Series o{{}, {}, "observed", true};
    for (std::size_t k = 0; k < rows.size(); ++k) {
      e.x.push_back(static_cast<double>(k));
      e.y.push_back(rows[k].expected);
      o.x.push_back(static_cast<double>(k));
      o.y.push_back(rows[k].observed);
    }
    write_text(out_path(c, "kostlan.svg"), whens_cli::svg_plot({e, o}, "counts per annulus", "annulus", "count"));
  }
  std::cout << "annuli_pass=" << (sum.all_pass ? "yes" : "no") << " hole_pass=" << (hole_pass ? "yes" : "no")
            << " p_value=" << fmt(sum.p_value) << "\n";
  return c.check && !(sum.all_pass && hole_pass) ? kExitCheckFailed : kExitOk;
}

int cmd_weyl(const Config& c) {
  const auto areas = parse_list<double>(c.areas, "areas");
  if (!(c.delta > 0.0 && c.delta < 1.0)) throw CliError{kExitUsage, "weyl: --delta must lie in (0, 1)"};
  Provenance p(c);
  p.add("window", c.window);
  p.add("areas", c.areas);
  p.add("delta", c.delta);
  p.add("basis", c.basis == 0 ? "default" : std::to_string(c.basis));
  p.add("quad", c.quad == 0 ? "default" : std::to_string(c.quad));
  std::string csv;
  std::vector<double> normalized;
  std::vector<std::string> warnings;
  char buf[192];
  for (double area : areas) {
    if (!(area > 0.0)) throw CliError{kExitUsage, "weyl: areas must be positive"};
    const std::string domain = "disk:" + fmt(std::sqrt(area / std::numbers::pi));
    Assembled a = assemble(c.window, domain, c.basis, c.quad);
    warnings.insert(warnings.end(), a.warnings.begin(), a.warnings.end());
    std::size_t count = 0;
    check(whens_weyl_count(a.spectrum.get(), c.delta, &count));
    const double perimeter = whens_domain_perimeter(a.domain.get());
    const double err = std::abs(static_cast<double>(count) - area);
    normalized.push_back(err / perimeter);
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%zu,%.17g,%.17g\n", area, perimeter, count, err, err / perimeter);
    csv += buf;
  }
  write_text(out_path(c, "weyl.csv"), p.str() + "area,perimeter,count,abs_err,normalized\n" + csv);
  bool ok = true;
  for (double v : normalized) ok = ok && v <= 1.5 * normalized.front();
  if (c.svg) {
    whens_cli::Series s{areas, normalized, "", true};
    write_text(out_path(c, "weyl.svg"), whens_cli::svg_plot({s}, "|count - area| / perimeter", "area", "normalized"));
  }
  double worst = 0.0;
  for (double v : normalized) worst = std::max(worst, v);
  std::cout << "max_normalized=" << fmt(worst) << "\n";
  int code = report_warnings(c, warnings);
  if (c.check && !ok) code = kExitCheckFailed;
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  Config cfg;
  CLI::App app{"Weyl-Heisenberg and polyanalytic ensembles: spectra, intensities, sampling"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(whens_version()));

  auto common_window = [&](CLI::App* sub) {
    sub->add_option("--window", cfg.window, "hermite:<r> or file:<path>");
    sub->add_option("--basis", cfg.basis, "Hermite basis size M (0: max(2 n, n + 64))");
    sub->add_option("--quad", cfg.quad, "radial/per-axis quadrature order (0: 4M + 32)");
    sub->add_flag("--allow-warnings", cfg.allow_warnings, "do not turn numerical warnings into exit code 3");
  };
  auto common_out = [&](CLI::App* sub) {
    sub->add_option("--out", cfg.out, "output directory");
    sub->add_flag("--svg", cfg.svg, "also write an SVG plot");
  };

  auto* spectrum = app.add_subcommand("spectrum", "eigenvalues of the localization operator");
  common_window(spectrum);
  common_out(spectrum);
  spectrum->add_option("--domain", cfg.domain, "disk:R | annulus:r0,R | rect:a,b,c,d | poly:@file")->required();
  spectrum->add_flag("--eigenvectors", cfg.eigenvectors, "also write eigenvectors.csv");

  auto* inten = app.add_subcommand("intensity", "one-point intensity grid and L1 deviation");
  common_window(inten);
  common_out(inten);
  inten->add_option("--domain", cfg.domain, "domain descriptor (finite WH ensemble)");
  inten->add_option("--r", cfg.r, "Landau level of the pure ensemble (with --N)");
  inten->add_option("--N", cfg.n_list, "rank of the pure ensemble K_{r,N}");
  inten->add_option("--grid", cfg.grid, "grid points per axis");

  auto* compare = app.add_subcommand("compare", "trace-norm distance sweep");
  common_out(compare);
  compare->add_option("--r", cfg.r, "Landau level");
  compare->add_option("--N", cfg.n_list, "comma-separated ranks");
  compare->add_flag("--check", cfg.check, "exit 4 unless ratios stay within 1.5x of the first");

  auto* sample = app.add_subcommand("sample", "sample a projection DPP");
  common_window(sample);
  common_out(sample);
  sample->add_option("--domain", cfg.domain, "domain descriptor (finite WH ensemble)");
  sample->add_option("--r", cfg.r, "Landau level (pure ensemble)");
  sample->add_option("--N", cfg.n_list, "rank (pure ensemble)");
  sample->add_option("--samples", cfg.samples, "number of configurations (default 1000)");
  sample->add_option("--seed", cfg.seed, "master seed");
  sample->add_option("--annuli", cfg.annuli, "annuli in the radial report");
  sample->add_flag("--check", cfg.check, "exit 4 if an annulus band fails");

  auto* kostlan = app.add_subcommand("kostlan", "radial law and hole probability of a pure ensemble");
  common_out(kostlan);
  kostlan->add_option("--r", cfg.r, "Landau level");
  kostlan->add_option("--N", cfg.n_list, "rank");
  kostlan->add_option("--samples", cfg.samples, "number of configurations (default 10000)");
  kostlan->add_option("--seed", cfg.seed, "master seed");
  kostlan->add_option("--annuli", cfg.annuli, "number of annuli");
  kostlan->add_flag("--independent", cfg.independent, "draw the independent radii instead of sampling the DPP");
  kostlan->add_flag("--check", cfg.check, "exit 4 if a band or the hole probability fails");

  auto* weyl = app.add_subcommand("weyl", "eigenvalue counts above 1 - delta on disks");
  common_window(weyl);
  common_out(weyl);
  weyl->add_option("--areas", cfg.areas, "comma-separated disk areas");
  weyl->add_option("--delta", cfg.delta, "threshold parameter in (0, 1)");
  weyl->add_flag("--check", cfg.check, "exit 4 if the normalized error grows past 1.5x the first");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return kExitUsage;
  }

  try {
    for (auto* sub : app.get_subcommands()) cfg.command = sub->get_name();
    if (cfg.command == "spectrum") return cmd_spectrum(cfg);
    if (cfg.command == "intensity") return cmd_intensity(cfg);
    if (cfg.command == "compare") return cmd_compare(cfg);
    if (cfg.command == "sample") return cmd_sample(cfg);
    if (cfg.command == "kostlan") return cmd_kostlan(cfg);
    if (cfg.command == "weyl") return cmd_weyl(cfg);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    if (e.code == kExitUsage) std::cerr << app.help();
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitWarning;
  }
  return kExitUsage;
}
