#include "nlpev/certify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nlpev/errors.hpp"

namespace nlpev {

namespace {

double bracket_width(const Eigensolution& s) { return s.pair.lambda_hi - s.pair.lambda_lo; }

std::ostringstream context_stream() {
  std::ostringstream os;
  os.precision(12);
  return os;
}

// Verifies the problem is translation invariant by sampling and returns
// (q, a, J0 evaluator reach) for the exponential bound.
void require_translation_invariant(const ProblemSpec& p) {
  const auto& j = p.kernel.j;
  const auto& q = p.coeffs.q;
  const auto& a = p.coeffs.a;
  const double d1 = p.kernel.delta1;
  for (int k = 0; k < 17; ++k) {
    double t = -3.0 * d1 + 6.0 * d1 * k / 16.0;
    if (std::abs(q(t) - q(0.0)) > 1e-12 * (1 + std::abs(q(0.0))) ||
        std::abs(a(t) - a(0.0)) > 1e-12 * (1 + std::abs(a(0.0))))
      throw Error(ErrorKind::unsupported, "exp_testfn_bound needs constant q and a");
    for (int m = 0; m < 9; ++m) {
      double z = -1.1 * d1 + 2.2 * d1 * m / 8.0;
      if (std::abs(j(z + t, t) - j(z, 0.0)) > 1e-12 * (1 + p.kernel.kappa1))
        throw Error(ErrorKind::unsupported, "exp_testfn_bound needs a translation-invariant kernel");
    }
  }
}

}  // namespace

const char* property_id_name(PropertyId id) {
  switch (id) {
    case PropertyId::domain_monotone: return "domain_monotone";
    case PropertyId::a_monotone: return "a_monotone";
    case PropertyId::a_lipschitz: return "a_lipschitz";
    case PropertyId::lower_bound: return "lower_bound";
    case PropertyId::j_monotone: return "j_monotone";
    case PropertyId::dual_gap: return "dual_gap";
    case PropertyId::exp_testfn_bound: return "exp_testfn_bound";
  }
  return "unknown";
}

double check_tolerance(double lambda_scale, double bw1, double bw2) {
  return bw1 + bw2 + 1e-2 * (1.0 + std::abs(lambda_scale));
}

PropertyReport check_domain_monotone(const ProblemSpec& problem, const Interval& inner,
                                     const Interval& outer, int n, const SolverConfig& cfg) {
  if (!outer.contains(inner)) throw Error(ErrorKind::geometry, "inner interval must lie inside outer");
  if (!problem.domain.contains(outer)) throw Error(ErrorKind::geometry, "outer interval must lie inside the domain");

  Grid outer_grid = build_grid(outer, n);
  const double h = outer_grid.spacing();
  // Snap the inner interval onto outer grid nodes so the two discretizations nest.
  int i0 = static_cast<int>(std::ceil((inner.lower - outer.lower) / h - 1e-9));
  int i1 = static_cast<int>(std::floor((inner.upper - outer.lower) / h + 1e-9));
  i0 = std::clamp(i0, 0, n - 1);
  i1 = std::clamp(i1, 0, n - 1);
  if (i1 - i0 + 1 < 3)
    throw Error(ErrorKind::geometry, "inner interval too small for the requested grid spacing");
  Interval snapped(outer_grid.nodes[i0], outer_grid.nodes[i1]);

  Eigensolution outer_sol = solve_principal(problem.with_domain(outer), n, cfg);
  Eigensolution inner_sol = solve_principal(problem.with_domain(snapped), i1 - i0 + 1, cfg);

  double lhs = inner_sol.pair.lambda_est;
  double rhs = outer_sol.pair.lambda_est;
  double tol = check_tolerance(std::max(std::abs(lhs), std::abs(rhs)), bracket_width(inner_sol),
                               bracket_width(outer_sol));
  auto os = context_stream();
  os << "inner snapped to [" << snapped.lower << ", " << snapped.upper << "], outer [" << outer.lower
     << ", " << outer.upper << "]";
  return {PropertyId::domain_monotone, lhs >= rhs - tol, lhs, rhs, tol, os.str()};
}

std::vector<PropertyReport> check_a_monotone_and_lipschitz(const ProblemSpec& problem,
                                                           const Coefficient& a1, const Coefficient& a2,
                                                           int n, const SolverConfig& cfg) {
  Grid grid = build_grid(problem.domain, n);
  bool ordered = true;
  double gap_inf = 0.0;
  for (double x : grid.nodes) {
    double d = a1(x) - a2(x);
    if (d < 0) ordered = false;
    gap_inf = std::max(gap_inf, std::abs(d));
  }

  Eigensolution s1 = solve_principal(problem.with_a(a1), n, cfg);
  Eigensolution s2 = solve_principal(problem.with_a(a2), n, cfg);
  double l1 = s1.pair.lambda_est, l2 = s2.pair.lambda_est;
  double tol = check_tolerance(std::max(std::abs(l1), std::abs(l2)), bracket_width(s1), bracket_width(s2));

  std::vector<PropertyReport> out;
  if (ordered) {
    auto os = context_stream();
    os << "a1 >= a2 on the grid; lambda(a1) vs lambda(a2)";
    out.push_back({PropertyId::a_monotone, l1 <= l2 + tol, l1, l2, tol, os.str()});
  }
  auto os = context_stream();
  os << "|lambda(a1) - lambda(a2)| vs grid max |a1 - a2| = " << gap_inf;
  out.push_back({PropertyId::a_lipschitz, std::abs(l1 - l2) <= gap_inf + tol, std::abs(l1 - l2), gap_inf,
                 tol, os.str()});
  return out;
}

PropertyReport check_lower_bound(const ProblemSpec& problem, int n, const SolverConfig& cfg) {
  Eigensolution sol = solve_principal(problem, n, cfg);
  const Grid& g = sol.grid;
  double bound = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < g.n; ++i) {
    double mass = 0.0;
    for (int j = 0; j < g.n; ++j) mass += problem.kernel.j(g.nodes[i], g.nodes[j]) * g.weights[j];
    bound = std::max(bound, problem.coeffs.a(g.nodes[i]) + mass);
  }
  bound = -bound;
  double lhs = sol.pair.lambda_est;
  double tol = check_tolerance(std::abs(lhs), bracket_width(sol));
  auto os = context_stream();
  os << "lambda_est vs -sup(a + integral of J), the constant-test-function bound";
  return {PropertyId::lower_bound, lhs >= bound - tol, lhs, bound, tol, os.str()};
}

PropertyReport check_j_monotone(const ProblemSpec& problem, const KernelSpec& j1, const KernelSpec& j2,
                                int n, const SolverConfig& cfg) {
  auto [wlo, whi] = std::pair<double, double>{problem.domain.lower, problem.domain.upper};
  if (!problem.domain.is_bounded()) throw Error(ErrorKind::geometry, "bounded domain required");
  const int m = 64;
  for (int i = 0; i < m; ++i) {
    for (int k = 0; k < m; ++k) {
      double x = wlo + (whi - wlo) * i / (m - 1);
      double y = wlo + (whi - wlo) * k / (m - 1);
      if (j1.j(x, y) < j2.j(x, y) - 1e-14)
        throw Error(ErrorKind::argument, "precondition J1 >= J2 fails on the sampling mesh");
    }
  }
  Eigensolution s1 = solve_principal(problem.with_kernel(j1), n, cfg);
  Eigensolution s2 = solve_principal(problem.with_kernel(j2), n, cfg);
  double l1 = s1.pair.lambda_est, l2 = s2.pair.lambda_est;
  double tol = check_tolerance(std::max(std::abs(l1), std::abs(l2)), bracket_width(s1), bracket_width(s2));
  auto os = context_stream();
  os << "lambda(J1) vs lambda(J2) for J1 >= J2";
  return {PropertyId::j_monotone, l1 <= l2 + tol, l1, l2, tol, os.str()};
}

PropertyReport check_dual_gap(const ProblemSpec& problem, int n, const SolverConfig& cfg) {
  Eigensolution sol = solve_principal(problem, n, cfg);
  DiscreteOperator op = assemble(problem, sol.grid);
  std::vector<double> applied = matvec(op, sol.pair.phi);
  double rmin = std::numeric_limits<double>::infinity(), rmax = -rmin;
  for (int i = 0; i < op.active_size(); ++i) {
    double r = -applied[i] / sol.pair.phi[i];
    rmin = std::min(rmin, r);
    rmax = std::max(rmax, r);
  }
  double width = rmax - rmin;
  double tol = 10.0 * cfg.tol_bracket;
  auto os = context_stream();
  os << "two-sided certificate width from the converged eigenvector; the same vector "
        "witnesses the lower and upper characterizations";
  return {PropertyId::dual_gap, width <= tol, width, 0.0, tol, os.str()};
}

double exp_testfn_lower_bound(const ProblemSpec& problem, std::span<const double> gamma_grid) {
  if (gamma_grid.empty()) throw Error(ErrorKind::argument, "empty gamma grid");
  require_translation_invariant(problem);
  const double q = problem.coeffs.q(0.0);
  const double a = problem.coeffs.a(0.0);
  const double d1 = problem.kernel.delta1;
  const auto& j = problem.kernel.j;

  // Fine trapezoid for the moment integral of J0 over its horizon.
  const int m = 4097;
  const double h = 2.0 * d1 / (m - 1);
  double best = -std::numeric_limits<double>::infinity();
  for (double gamma : gamma_grid) {
    double integral = 0.0;
    for (int i = 0; i < m; ++i) {
      double z = -d1 + i * h;
      double w = (i == 0 || i == m - 1) ? h / 2 : h;
      integral += w * j(z, 0.0) * std::exp(gamma * z);
    }
    double b = q * gamma + integral + a;
    best = std::max(best, -b);
  }
  return best;
}

PropertyReport exp_testfn_bound(const ProblemSpec& problem, std::span<const double> gamma_grid,
                                std::span<const double> truncation_lambdas, double tol) {
  double bound = exp_testfn_lower_bound(problem, gamma_grid);
  double lhs = std::numeric_limits<double>::infinity();
  for (double l : truncation_lambdas) lhs = std::min(lhs, l);
  bool pass = truncation_lambdas.empty() ? true : lhs >= bound - tol;
  auto os = context_stream();
  os << "min truncation lambda vs exponential-test-function bound over " << gamma_grid.size()
     << " gamma samples";
  if (truncation_lambdas.empty()) os << " (no truncation values supplied; bound only)";
  return {PropertyId::exp_testfn_bound, pass, lhs, bound, tol, os.str()};
}

}  // namespace nlpev
