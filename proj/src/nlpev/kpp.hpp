#pragma once

#include <functional>
#include <span>
#include <vector>

#include "nlpev/eigsolve.hpp"
#include "nlpev/problem.hpp"

namespace nlpev {

/// Climate-shift KPP data in the moving frame: translation-invariant kernel,
/// shift speed c, nonlinearity f(x, s) with linearization growth_lin(x) at
/// s = 0, hostile outside |x| <= carrying_bound.
struct KppSpec {
  KernelSpec kernel;  // used as J0(x - y); must be translation invariant
  double speed_c = 0.0;
  std::function<double(double, double)> growth;  // f(x, s)
  Coefficient growth_lin;                        // d/ds f(x, 0)
  double domain_radius = 0.0;
  double carrying_bound = 0.0;  // A: growth_lin < 0 for |x| >= A and f(.,s) <= 0 past s = A

  // f(x, s) = growth_lin(x) s - b s^2; KPP by construction for b > 0.
  static KppSpec logistic(KernelSpec kernel, double speed_c, Coefficient growth_lin, double b,
                          double domain_radius, double carrying_bound);
};

/// Samples the KPP structure conditions: f(x,0) = 0, f(x,s) <= growth_lin(x) s,
/// growth_lin < 0 outside the niche, translation-invariant kernel.
ValidationReport validate_kpp(const KppSpec& spec, int mesh);

/// Linearization at zero in the moving frame on (-R, R): q = c,
/// a(x) = growth_lin(x) - m with m the kernel mass. Rejects c = 0 (the
/// drift-free theory is a different, inf |q| = 0 regime).
ProblemSpec linearized_problem(const KppSpec& spec);

struct PersistenceVerdict {
  double lambda_lin = 0.0;
  bool predicted_persist = false;  // lambda_lin < 0
  double simulated_mass = 0.0;     // final spatial max of v
  bool agree = false;
  double mass_tol = 1e-4;
};

struct SimOptions {
  double h = 0.05;
  double dt = 0.0;  // <= 0 selects 0.9 * the stability budget
  double t_end = 200.0;
  double v0_scale = -1.0;  // <= 0 selects min(1, carrying_bound)
  double mass_tol = 1e-4;
  int record_every = 0;  // sample max v every k steps (0: start and end only)
  std::function<void(double, std::span<const double>, std::span<const double>)> frame_sink;
  int frame_every = 0;
  SolverConfig solver;
};

struct SimResult {
  PersistenceVerdict verdict;
  std::vector<double> t_history;
  std::vector<double> maxv_history;
  double edge_mass_deficit = 0.0;  // quadrature mass lost at the truncation edges
  long steps = 0;
  double dt = 0.0;
  int n = 0;
};

/// Explicit upwind time stepping of v_t = c v' + J0 * v - m v + f(x, v) on
/// (-R, R) with zero inflow, from the bump min(1, A) 1_{|x| <= 1}; the verdict
/// compares the outcome against the sign of the linearized eigenvalue.
SimResult simulate(const KppSpec& spec, const SimOptions& options);

}  // namespace nlpev
