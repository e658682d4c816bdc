// Copyright 2026 The whens Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace whens_cli {

struct Series {
  std::vector<double> x;
  std::vector<double> y;
  std::string label;
  bool markers = false;  // dots instead of a polyline
};

/// Axes with ticks and one or more series; output is deterministic.
std::string svg_plot(const std::vector<Series>& series, const std::string& title, const std::string& xlabel,
                     const std::string& ylabel);

/// Grayscale heat map of values[i * nx + k] on [x0, x1] x [y0, y1].
std::string svg_heatmap(const std::vector<double>& values, std::size_t nx, std::size_t ny, double x0, double x1,
                        double y0, double y1, const std::string& title);

}  // namespace whens_cli
