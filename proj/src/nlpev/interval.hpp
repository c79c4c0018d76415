#pragma once

#include <cmath>
#include <limits>

#include "nlpev/errors.hpp"

namespace nlpev {

// Open interval of the real line; either endpoint may be infinite.
struct Interval {
  double lower;
  double upper;

  Interval(double lo, double hi) : lower(lo), upper(hi) {
    if (std::isnan(lo) || std::isnan(hi) || !(lo < hi))
      throw Error(ErrorKind::argument, "interval requires lower < upper");
  }

  static Interval whole_line() {
    return Interval(-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity());
  }

  bool is_bounded() const { return std::isfinite(lower) && std::isfinite(upper); }

  double length() const { return upper - lower; }

  bool contains(double x) const { return x > lower && x < upper; }

  // Closed containment of another interval (equality of endpoints allowed).
  bool contains(const Interval& other) const { return other.lower >= lower && other.upper <= upper; }

  // Distance from the closed set [a, b] to the boundary of this interval
  // (infinite on an unbounded side).
  double boundary_distance(double a, double b) const {
    double dl = std::isfinite(lower) ? a - lower : std::numeric_limits<double>::infinity();
    double du = std::isfinite(upper) ? upper - b : std::numeric_limits<double>::infinity();
    return std::min(dl, du);
  }
};

}  // namespace nlpev
