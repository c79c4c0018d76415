#pragma once

#include <cstdint>
#include <vector>

#include "nlpev/discretize.hpp"
#include "nlpev/problem.hpp"

namespace nlpev {

enum class SeedVector { ones, random_positive };

enum class PerronStrategy {
  automatic,     // power iteration at desk scale, shift-invert on large grids
  power,         // spec path: shifted power iteration, monotone brackets
  shift_invert,  // banded LU acceleration; brackets still certified by direct matvec ratios
};

struct SolverConfig {
  double tol_bracket = 1e-6;
  long max_iters = 100000;
  SeedVector seed_vector = SeedVector::ones;
  std::uint64_t seed = 0;
  PerronStrategy strategy = PerronStrategy::automatic;
  std::vector<double> warm_start;  // optional positive start vector (active nodes)
};

struct BracketStep {
  double lo;
  double hi;
};

/// Sign convention: the continuous problem reads M[phi] + a*phi + lambda*phi = 0,
/// so lambda = -(Perron value of A). Brackets always satisfy
/// lambda_lo <= lambda_est <= lambda_hi and certify the Perron value through the
/// Collatz-Wielandt ratios of an actual matrix-vector product.
struct Eigenpair {
  double lambda_est = 0.0;
  double lambda_lo = 0.0;
  double lambda_hi = 0.0;
  std::vector<double> phi;  // active nodes, positive, max-normalized to 1
  long iterations = 0;
  double residual = 0.0;  // max-norm of A*phi + lambda_est*phi
  std::vector<BracketStep> history;  // raw per-iterate brackets
};

/// Collatz-Wielandt power iteration on a Metzler matrix with the given
/// diagonal shift (A + shift*I must be entrywise nonnegative).
Eigenpair perron(const DenseMatrix& a, double shift, const SolverConfig& cfg);

/// Solver entry point for assembled operators; checks the irreducibility band
/// and picks the iteration strategy.
Eigenpair perron(const DiscreteOperator& op, const SolverConfig& cfg);

struct Eigensolution {
  Eigenpair pair;
  Grid grid;
  int bc_node = 0;
  int bc_side = 1;
  std::vector<double> phi;  // full grid, zero at bc_node
};

Eigensolution solve_principal(const ProblemSpec& problem, int n, const SolverConfig& cfg);

/// Reflected problem through the midpoint of a bounded domain:
/// q~(x) = -q(r1+r2-x), a~(x) = a(r1+r2-x), J~(x,y) = J(r1+r2-x, r1+r2-y).
ProblemSpec reflect(const ProblemSpec& problem);

/// Solves the reflected problem and maps the eigenfunction back; the
/// eigenvalue is unchanged.
Eigensolution solve_via_reflection(const ProblemSpec& problem, int n, const SolverConfig& cfg);

}  // namespace nlpev
