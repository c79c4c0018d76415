#pragma once

#include <filesystem>
#include <span>
#include <vector>

#include "nlpev/problem.hpp"

namespace nlpev {

struct DenseMatrix {
  int n = 0;
  std::vector<double> data;  // row-major n*n

  DenseMatrix() = default;
  explicit DenseMatrix(int size) : n(size), data(static_cast<size_t>(size) * size, 0.0) {}

  double& at(int i, int j) { return data[static_cast<size_t>(i) * n + j]; }
  double at(int i, int j) const { return data[static_cast<size_t>(i) * n + j]; }

  void multiply(std::span<const double> x, std::span<double> y) const;
};

/// Dense Metzler discretization of q*phi' + integral of J*phi + a*phi on the
/// active nodes of a grid. The boundary node forced to zero (outflow side,
/// chosen by the sign of q) has its row and column deleted.
struct DiscreteOperator {
  Grid grid;
  DenseMatrix matrix;    // (n-1) x (n-1) on active nodes
  int bc_node = 0;       // grid index of the deleted node
  int bc_side = 1;       // 0: condition at the lower endpoint (q < 0); 1: upper (q > 0)
  int active_offset = 0; // grid index of active row 0
  double metzler_shift = 0.0;          // s with A + s*I entrywise nonnegative
  int band_halfwidth = 0;              // offsets beyond this are structurally zero

  int active_size() const { return matrix.n; }
  double node_of(int active_index) const { return grid.nodes[active_offset + active_index]; }

  // Active-node vector extended by the zero boundary value onto the full grid.
  std::vector<double> extend(std::span<const double> active_values) const;
};

DiscreteOperator assemble(const ProblemSpec& problem, const Grid& grid);

std::vector<double> matvec(const DiscreteOperator& op, std::span<const double> v);

/// Debug dump: three little-endian int64 (n_active, bc_side, reserved) then the
/// row-major matrix as 64-bit floats.
void dump_matrix(const DiscreteOperator& op, const std::filesystem::path& path);

}  // namespace nlpev
