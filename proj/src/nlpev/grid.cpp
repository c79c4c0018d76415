#include "nlpev/grid.hpp"

#include "nlpev/errors.hpp"

namespace nlpev {

Grid build_grid(const Interval& interval, int n) {
  if (!interval.is_bounded())
    throw Error(ErrorKind::geometry, "cannot grid an unbounded interval; truncate it first");
  if (n < 3) throw Error(ErrorKind::argument, "grid needs at least 3 nodes");

  Grid g{interval, n, {}, {}};
  g.nodes.resize(n);
  g.weights.resize(n);
  const double h = interval.length() / (n - 1);
  for (int i = 0; i < n; ++i) g.nodes[i] = interval.lower + i * h;
  g.nodes[n - 1] = interval.upper;  // exact endpoint
  for (int i = 0; i < n; ++i) g.weights[i] = h;
  g.weights[0] = g.weights[n - 1] = h / 2;
  return g;
}

std::vector<double> upwind_derivative(const Grid& grid, QSign sign, const std::vector<double>& values) {
  if (static_cast<int>(values.size()) != grid.n)
    throw Error(ErrorKind::shape, "value count does not match grid size");
  const double h = grid.spacing();
  std::vector<double> d(grid.n);
  if (sign == QSign::positive) {
    for (int i = 0; i + 1 < grid.n; ++i) d[i] = (values[i + 1] - values[i]) / h;
    d[grid.n - 1] = (0.0 - values[grid.n - 1]) / h;
  } else {
    for (int i = 1; i < grid.n; ++i) d[i] = (values[i] - values[i - 1]) / h;
    d[0] = (values[0] - 0.0) / h;
  }
  return d;
}

}  // namespace nlpev
