#include "nlpev/discretize.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>

#include "nlpev/errors.hpp"

namespace nlpev {

void DenseMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  if (static_cast<int>(x.size()) != n || static_cast<int>(y.size()) != n)
    throw Error(ErrorKind::shape, "matvec size mismatch");
  const double* row = data.data();
  for (int i = 0; i < n; ++i, row += n) {
    double acc = 0.0;
    for (int j = 0; j < n; ++j) acc += row[j] * x[j];
    y[i] = acc;
  }
}

std::vector<double> DiscreteOperator::extend(std::span<const double> active_values) const {
  if (static_cast<int>(active_values.size()) != matrix.n)
    throw Error(ErrorKind::shape, "active vector size mismatch");
  std::vector<double> full(grid.n, 0.0);
  for (int k = 0; k < matrix.n; ++k) full[active_offset + k] = active_values[k];
  return full;
}

DiscreteOperator assemble(const ProblemSpec& problem, const Grid& grid) {
  if (!problem.domain.contains(grid.interval))
    throw Error(ErrorKind::geometry, "grid interval is not contained in the problem domain");

  const int n = grid.n;
  const double h = grid.spacing();
  const QSign sign = problem.coeffs.q_sign;

  std::vector<double> q(n), a(n);
  for (int i = 0; i < n; ++i) {
    q[i] = problem.coeffs.q(grid.nodes[i]);
    a[i] = problem.coeffs.a(grid.nodes[i]);
    bool ok = sign == QSign::positive ? q[i] > 0 : q[i] < 0;
    if (!ok)
      throw Error(ErrorKind::validation, "sampled q contradicts the declared sign flag");
  }

  DiscreteOperator op{grid, DenseMatrix(n - 1), 0, 0, 0, 0.0, 0};
  if (sign == QSign::positive) {
    op.bc_node = n - 1;  // eigenfunction vanishes at the upper endpoint
    op.bc_side = 1;
    op.active_offset = 0;
  } else {
    op.bc_node = 0;
    op.bc_side = 0;
    op.active_offset = 1;
  }

  const int m = n - 1;
  for (int k = 0; k < m; ++k) {
    const int gi = op.active_offset + k;
    const double x = grid.nodes[gi];
    // Upwind drift: forward difference toward the deleted node for q > 0,
    // backward for q < 0. Couplings into the deleted node drop (value 0 there).
    if (sign == QSign::positive) {
      op.matrix.at(k, k) += -q[gi] / h;
      if (k + 1 < m) op.matrix.at(k, k + 1) += q[gi] / h;
    } else {
      op.matrix.at(k, k) += q[gi] / h;
      if (k - 1 >= 0) op.matrix.at(k, k - 1) += -q[gi] / h;
    }
    for (int l = 0; l < m; ++l) {
      const int gj = op.active_offset + l;
      op.matrix.at(k, l) += problem.kernel.j(x, grid.nodes[gj]) * grid.weights[gj];
    }
    op.matrix.at(k, k) += a[gi];
  }

  double max_diag = 0.0;
  for (int k = 0; k < m; ++k) max_diag = std::max(max_diag, std::abs(op.matrix.at(k, k)));
  op.metzler_shift = max_diag + 1.0;

  op.band_halfwidth = std::min(m - 1, static_cast<int>(std::ceil(problem.kernel.delta1 / h)) + 1);
  return op;
}

std::vector<double> matvec(const DiscreteOperator& op, std::span<const double> v) {
  std::vector<double> out(op.matrix.n);
  op.matrix.multiply(v, out);
  return out;
}

void dump_matrix(const DiscreteOperator& op, const std::filesystem::path& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::io, "cannot open " + path.string() + " for writing");
  std::int64_t header[3] = {op.matrix.n, op.bc_side, 0};
  f.write(reinterpret_cast<const char*>(header), sizeof(header));
  f.write(reinterpret_cast<const char*>(op.matrix.data.data()),
          static_cast<std::streamsize>(op.matrix.data.size() * sizeof(double)));
  if (!f) throw Error(ErrorKind::io, "short write to " + path.string());
}

}  // namespace nlpev
