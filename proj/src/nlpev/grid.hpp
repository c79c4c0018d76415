#pragma once

#include <vector>

#include "nlpev/interval.hpp"

namespace nlpev {

/// Uniform grid on a bounded interval with composite-trapezoid quadrature
/// weights: h/2 at the endpoints, h inside; weights sum to the length.
struct Grid {
  Interval interval;
  int n = 0;
  std::vector<double> nodes;
  std::vector<double> weights;

  double spacing() const { return interval.length() / (n - 1); }

  bool same_layout(const Grid& other) const {
    return n == other.n && interval.lower == other.interval.lower && interval.upper == other.interval.upper;
  }
};

Grid build_grid(const Interval& interval, int n);

enum class QSign { positive, negative };

// One-sided difference oriented with the drift sign, with a zero ghost value
// past the outflow endpoint (the same stencil the assembled operator uses).
std::vector<double> upwind_derivative(const Grid& grid, QSign sign, const std::vector<double>& values);

}  // namespace nlpev
