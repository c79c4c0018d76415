#include "nlpev/functions.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nlpev/errors.hpp"

namespace nlpev {

namespace {

std::string fmt(const char* name, std::initializer_list<double> params) {
  std::ostringstream os;
  os << name << "(";
  bool first = true;
  for (double p : params) {
    if (!first) os << ", ";
    os << p;
    first = false;
  }
  os << ")";
  return os.str();
}

}  // namespace

Coefficient Coefficient::constant(double c) {
  return Coefficient([c](double) { return c; }, fmt("constant", {c}));
}

Coefficient Coefficient::affine(double c0, double c1) {
  return Coefficient([c0, c1](double x) { return c0 + c1 * x; }, fmt("affine", {c0, c1}));
}

Coefficient Coefficient::indicator_bump(double inside, double outside, double center, double halfwidth) {
  if (!(halfwidth > 0)) throw Error(ErrorKind::argument, "indicator-bump halfwidth must be positive");
  return Coefficient(
      [=](double x) { return std::abs(x - center) <= halfwidth ? inside : outside; },
      fmt("indicator-bump", {inside, outside, center, halfwidth}));
}

Coefficient Coefficient::tent(double peak, double center, double halfwidth) {
  if (!(halfwidth > 0)) throw Error(ErrorKind::argument, "tent halfwidth must be positive");
  return Coefficient(
      [=](double x) { return peak * std::max(0.0, 1.0 - std::abs(x - center) / halfwidth); },
      fmt("tent", {peak, center, halfwidth}));
}

Coefficient Coefficient::table(std::vector<std::pair<double, double>> points) {
  if (points.size() < 2) throw Error(ErrorKind::argument, "table coefficient needs at least 2 points");
  std::sort(points.begin(), points.end());
  for (size_t i = 1; i < points.size(); ++i)
    if (!(points[i - 1].first < points[i].first))
      throw Error(ErrorKind::argument, "table coefficient abscissae must be strictly increasing");
  auto eval = [pts = std::move(points)](double x) {
    if (x <= pts.front().first) return pts.front().second;
    if (x >= pts.back().first) return pts.back().second;
    auto it = std::upper_bound(pts.begin(), pts.end(), x,
                               [](double v, const auto& p) { return v < p.first; });
    const auto& [x1, v1] = *it;
    const auto& [x0, v0] = *(it - 1);
    double t = (x - x0) / (x1 - x0);
    return v0 + t * (v1 - v0);
  };
  return Coefficient(std::move(eval), "table");
}

Coefficient Coefficient::custom(std::function<double(double)> fn, std::string description) {
  return Coefficient(std::move(fn), std::move(description));
}

Kernel Kernel::constant_band(double value, double halfwidth) {
  if (!(halfwidth > 0)) throw Error(ErrorKind::argument, "constant-band halfwidth must be positive");
  return Kernel([=](double x, double y) { return std::abs(x - y) < halfwidth ? value : 0.0; },
                fmt("constant-band", {value, halfwidth}));
}

Kernel Kernel::tent_band(double peak, double halfwidth) {
  if (!(halfwidth > 0)) throw Error(ErrorKind::argument, "tent-band halfwidth must be positive");
  return Kernel([=](double x, double y) { return peak * std::max(0.0, 1.0 - std::abs(x - y) / halfwidth); },
                fmt("tent-band", {peak, halfwidth}));
}

Kernel Kernel::table2d(std::vector<double> xs, std::vector<double> ys, std::vector<std::vector<double>> values) {
  if (xs.size() < 2 || ys.size() < 2) throw Error(ErrorKind::argument, "table2d needs at least a 2x2 lattice");
  if (values.size() != xs.size()) throw Error(ErrorKind::argument, "table2d row count must match xs");
  for (const auto& row : values)
    if (row.size() != ys.size()) throw Error(ErrorKind::argument, "table2d column count must match ys");
  for (size_t i = 1; i < xs.size(); ++i)
    if (!(xs[i - 1] < xs[i])) throw Error(ErrorKind::argument, "table2d xs must be strictly increasing");
  for (size_t j = 1; j < ys.size(); ++j)
    if (!(ys[j - 1] < ys[j])) throw Error(ErrorKind::argument, "table2d ys must be strictly increasing");

  auto locate = [](const std::vector<double>& grid, double v) -> long {
    if (v < grid.front() || v > grid.back()) return -1;
    auto it = std::upper_bound(grid.begin(), grid.end(), v);
    long i = static_cast<long>(it - grid.begin()) - 1;
    return std::min<long>(i, static_cast<long>(grid.size()) - 2);
  };
  auto eval = [xs = std::move(xs), ys = std::move(ys), values = std::move(values), locate](double x, double y) {
    long i = locate(xs, x), j = locate(ys, y);
    if (i < 0 || j < 0) return 0.0;
    double tx = (x - xs[i]) / (xs[i + 1] - xs[i]);
    double ty = (y - ys[j]) / (ys[j + 1] - ys[j]);
    double v00 = values[i][j], v01 = values[i][j + 1], v10 = values[i + 1][j], v11 = values[i + 1][j + 1];
    return (1 - tx) * ((1 - ty) * v00 + ty * v01) + tx * ((1 - ty) * v10 + ty * v11);
  };
  return Kernel(std::move(eval), "table2d");
}

Kernel Kernel::custom(std::function<double(double, double)> fn, std::string description) {
  return Kernel(std::move(fn), std::move(description));
}

}  // namespace nlpev
