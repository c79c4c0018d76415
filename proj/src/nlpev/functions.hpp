#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace nlpev {

/// Scalar coefficient on the line. Built-in kinds cover the problem-file
/// schema; custom wraps an arbitrary callable (used e.g. by reflection).
class Coefficient {
 public:
  double operator()(double x) const { return fn_(x); }
  const std::string& description() const { return desc_; }

  static Coefficient constant(double c);
  // c0 + c1*x
  static Coefficient affine(double c0, double c1);
  // inside if |x-center| <= halfwidth, else outside
  static Coefficient indicator_bump(double inside, double outside, double center, double halfwidth);
  // peak * max(0, 1 - |x-center|/halfwidth)
  static Coefficient tent(double peak, double center, double halfwidth);
  // piecewise linear through (x, value) pairs, clamped outside the table range
  static Coefficient table(std::vector<std::pair<double, double>> points);
  static Coefficient custom(std::function<double(double)> fn, std::string description = "custom");

 private:
  Coefficient(std::function<double(double)> fn, std::string desc)
      : fn_(std::move(fn)), desc_(std::move(desc)) {}

  std::function<double(double)> fn_;
  std::string desc_;
};

/// Dispersal kernel J(x, y) >= 0 with compact horizon in |x - y|.
class Kernel {
 public:
  double operator()(double x, double y) const { return fn_(x, y); }
  const std::string& description() const { return desc_; }

  // value * 1_{|x-y| < halfwidth}
  static Kernel constant_band(double value, double halfwidth);
  // peak * max(0, 1 - |x-y|/halfwidth)
  static Kernel tent_band(double peak, double halfwidth);
  // bilinear interpolation of a rectangular table over [x0,x1] x [y0,y1]; zero outside
  static Kernel table2d(std::vector<double> xs, std::vector<double> ys, std::vector<std::vector<double>> values);
  static Kernel custom(std::function<double(double, double)> fn, std::string description = "custom");

 private:
  Kernel(std::function<double(double, double)> fn, std::string desc)
      : fn_(std::move(fn)), desc_(std::move(desc)) {}

  std::function<double(double, double)> fn_;
  std::string desc_;
};

}  // namespace nlpev
