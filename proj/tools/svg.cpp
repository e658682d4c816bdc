// Copyright 2026 The whens Authors
// SPDX-License-Identifier: Apache-2.0

#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace whens_cli {

namespace {

constexpr double kWidth = 640;
constexpr double kHeight = 420;
constexpr double kLeft = 70;
constexpr double kRight = 20;
constexpr double kTop = 40;
constexpr double kBottom = 55;

const char* const kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

// Roughly five round tick values covering [lo, hi].
std::vector<double> ticks(double lo, double hi) {
  const double span = hi - lo;
  const double raw = span / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (m * mag >= raw) {
      step = m * mag;
      break;
    }
  }
  std::vector<double> t;
  for (double v = std::ceil(lo / step) * step; v <= hi + 1e-9 * span; v += step) t.push_back(std::abs(v) < 1e-12 * step ? 0.0 : v);
  return t;
}

void header(std::ostringstream& os, const std::string& title) {
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
     << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << escape(title)
     << "</text>\n";
}

}  // namespace

std::string svg_plot(const std::vector<Series>& series, const std::string& title, const std::string& xlabel,
                     const std::string& ylabel) {
  double x0 = std::numeric_limits<double>::infinity();
  double x1 = -x0;
  double y0 = x0;
  double y1 = -x0;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      x0 = std::min(x0, s.x[i]);
      x1 = std::max(x1, s.x[i]);
      y0 = std::min(y0, s.y[i]);
      y1 = std::max(y1, s.y[i]);
    }
  }
  if (!std::isfinite(x0)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (x1 <= x0) x1 = x0 + 1;
  if (y1 <= y0) y1 = y0 + 1;
  const double pad = 0.05 * (y1 - y0);
  y0 -= pad;
  y1 += pad;

  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto sx = [&](double x) { return kLeft + (x - x0) / (x1 - x0) * pw; };
  auto sy = [&](double y) { return kTop + (1.0 - (y - y0) / (y1 - y0)) * ph; };

  std::ostringstream os;
  header(os, title);
  os << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (double t : ticks(x0, x1)) {
    os << "<line x1=\"" << num(sx(t)) << "\" y1=\"" << kTop + ph << "\" x2=\"" << num(sx(t)) << "\" y2=\""
       << kTop + ph + 5 << "\" stroke=\"black\"/>";
    os << "<text x=\"" << num(sx(t)) << "\" y=\"" << kTop + ph + 18 << "\" text-anchor=\"middle\">" << num(t)
       << "</text>\n";
  }
  for (double t : ticks(y0, y1)) {
    os << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << num(sy(t)) << "\" x2=\"" << kLeft << "\" y2=\"" << num(sy(t))
       << "\" stroke=\"black\"/>";
    os << "<text x=\"" << kLeft - 8 << "\" y=\"" << num(sy(t) + 4) << "\" text-anchor=\"end\">" << num(t)
       << "</text>\n";
  }
  os << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 12 << "\" text-anchor=\"middle\">" << escape(xlabel)
     << "</text>\n";
  os << "<text x=\"16\" y=\"" << kTop + ph / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
     << kTop + ph / 2 << ")\">" << escape(ylabel) << "</text>\n";

  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* color = kColors[k % std::size(kColors)];
    if (s.markers) {
      for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
        if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
        os << "<circle cx=\"" << num(sx(s.x[i])) << "\" cy=\"" << num(sy(s.y[i])) << "\" r=\"2\" fill=\"" << color
           << "\"/>\n";
      }
    } else {
      os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
      for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
        if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
        os << num(sx(s.x[i])) << ',' << num(sy(s.y[i])) << ' ';
      }
      os << "\"/>\n";
    }
    if (!s.label.empty()) {
      const double ly = kTop + 16 + 16 * static_cast<double>(k);
      os << "<rect x=\"" << kLeft + pw - 150 << "\" y=\"" << ly - 9 << "\" width=\"10\" height=\"10\" fill=\""
         << color << "\"/><text x=\"" << kLeft + pw - 135 << "\" y=\"" << ly << "\">" << escape(s.label)
         << "</text>\n";
    }
  }
  os << "</svg>\n";
  return os.str();
}

std::string svg_heatmap(const std::vector<double>& values, std::size_t nx, std::size_t ny, double x0, double x1,
                        double y0, double y1, const std::string& title) {
  double lo = 0.0;
  double hi = 1.0;
  for (double v : values) hi = std::max(hi, v);
  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  const double cw = pw / static_cast<double>(std::max<std::size_t>(nx, 1));
  const double ch = ph / static_cast<double>(std::max<std::size_t>(ny, 1));

  std::ostringstream os;
  header(os, title);
  for (std::size_t i = 0; i < ny; ++i) {
    for (std::size_t k = 0; k < nx; ++k) {
      const double t = std::clamp((values[i * nx + k] - lo) / (hi - lo), 0.0, 1.0);
      const int g = static_cast<int>(std::lround(255.0 * (1.0 - t)));
      char color[8];
      std::snprintf(color, sizeof color, "#%02x%02x%02x", g, g, g);
      os << "<rect x=\"" << num(kLeft + cw * static_cast<double>(k)) << "\" y=\""
         << num(kTop + ph - ch * static_cast<double>(i + 1)) << "\" width=\"" << num(cw + 0.05) << "\" height=\""
         << num(ch + 0.05) << "\" fill=\"" << color << "\"/>\n";
    }
  }
  os << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  os << "<text x=\"" << kLeft << "\" y=\"" << kTop + ph + 18 << "\">" << num(x0) << "</text>";
  os << "<text x=\"" << kLeft + pw << "\" y=\"" << kTop + ph + 18 << "\" text-anchor=\"end\">" << num(x1) << "</text>";
  os << "<text x=\"" << kLeft - 8 << "\" y=\"" << kTop + ph << "\" text-anchor=\"end\">" << num(y0) << "</text>";
  os << "<text x=\"" << kLeft - 8 << "\" y=\"" << kTop + 10 << "\" text-anchor=\"end\">" << num(y1) << "</text>\n";
  os << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 12 << "\" text-anchor=\"middle\">x</text>\n";
  os << "<text x=\"16\" y=\"" << kTop + ph / 2 << "\" text-anchor=\"middle\">xi</text>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace whens_cli
