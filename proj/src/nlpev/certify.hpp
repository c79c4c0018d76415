#pragma once

#include <span>
#include <string>
#include <vector>

#include "nlpev/eigsolve.hpp"
#include "nlpev/problem.hpp"

namespace nlpev {

enum class PropertyId {
  domain_monotone,
  a_monotone,
  a_lipschitz,
  lower_bound,
  j_monotone,
  dual_gap,
  exp_testfn_bound,
};

const char* property_id_name(PropertyId id);

struct PropertyReport {
  PropertyId id;
  bool pass;
  double lhs;
  double rhs;
  double tolerance;
  std::string context;
};

/// Tolerance budget for discrete checks of continuous-level inequalities:
/// the two solves' bracket widths plus a fixed discretization allowance.
double check_tolerance(double lambda_scale, double bracket_width_1, double bracket_width_2 = 0.0);

/// lambda(inner) >= lambda(outer) - tol on nested grids (the inner grid is the
/// outer grid restricted to inner, so no interpolation enters the comparison).
PropertyReport check_domain_monotone(const ProblemSpec& problem, const Interval& inner,
                                     const Interval& outer, int n, const SolverConfig& cfg);

/// Ordering lambda(a1) <= lambda(a2) + tol when a1 >= a2 on the grid, and the
/// Lipschitz bound |lambda(a1) - lambda(a2)| <= max|a1 - a2| + tol. One report
/// per inequality that applies.
std::vector<PropertyReport> check_a_monotone_and_lipschitz(const ProblemSpec& problem,
                                                           const Coefficient& a1, const Coefficient& a2,
                                                           int n, const SolverConfig& cfg);

/// lambda_est >= -max over the grid of (a(x) + sum_j J(x, y_j) w_j) - tol.
PropertyReport check_lower_bound(const ProblemSpec& problem, int n, const SolverConfig& cfg);

/// lambda(J1) <= lambda(J2) + tol for J1 >= J2 (ordering verified by sampling).
PropertyReport check_j_monotone(const ProblemSpec& problem, const KernelSpec& j1, const KernelSpec& j2,
                                int n, const SolverConfig& cfg);

/// The converged eigenvector certifies a two-sided bracket of width at most
/// 10 * tol_bracket: the same vector witnesses the sup- and inf-side
/// characterizations at once.
PropertyReport check_dual_gap(const ProblemSpec& problem, int n, const SolverConfig& cfg);

/// sup over the gamma grid of -b(gamma), b(gamma) = q*gamma +
/// integral of J0(z) e^{gamma z} dz + a, valid for translation-invariant data.
/// Every sampled gamma yields a true lower bound for lambda_p on the line.
double exp_testfn_lower_bound(const ProblemSpec& problem, std::span<const double> gamma_grid);

/// pass iff every supplied truncation eigenvalue sits above the exponential
/// bound minus tol (checks domain monotonicity against the bound).
PropertyReport exp_testfn_bound(const ProblemSpec& problem, std::span<const double> gamma_grid,
                                std::span<const double> truncation_lambdas, double tol);

}  // namespace nlpev
