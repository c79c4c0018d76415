#include "nlpev/exhaust.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace nlpev {

namespace {

// Linear interpolation of (grid, values) onto x, with a positive floor so the
// result can seed a Collatz-Wielandt iteration.
std::vector<double> interpolate_positive(const Grid& from, const std::vector<double>& values,
                                         const std::vector<double>& to_nodes) {
  double vmax = *std::max_element(values.begin(), values.end());
  double floor = std::max(1e-12 * vmax, 1e-300);
  std::vector<double> out(to_nodes.size(), floor);
  for (size_t k = 0; k < to_nodes.size(); ++k) {
    double x = to_nodes[k];
    if (x < from.interval.lower || x > from.interval.upper) continue;
    double s = (x - from.interval.lower) / from.spacing();
    int i = std::clamp(static_cast<int>(std::floor(s)), 0, from.n - 2);
    double frac = s - i;
    out[k] = std::max(floor, values[i] + frac * (values[i + 1] - values[i]));
  }
  return out;
}

int nodes_for(const Interval& iv, double h_target) {
  return std::max(3, static_cast<int>(std::lround(iv.length() / h_target)) + 1);
}

}  // namespace

std::vector<Interval> truncation_family(const Interval& domain, double r0, double growth, int count) {
  if (count < 2) throw Error(ErrorKind::argument, "family needs at least 2 members");
  if (!(r0 > 0) || !(growth > 1)) throw Error(ErrorKind::argument, "need r0 > 0 and growth > 1");

  // Constant family once the first window already covers a bounded domain.
  if (domain.is_bounded() && -r0 <= domain.lower && domain.upper <= r0) {
    double inset = std::min(1.0, domain.length() / 16.0) * std::pow(growth, -count);
    Interval member(domain.lower + inset, domain.upper - inset);
    return std::vector<Interval>(count, member);
  }

  std::vector<Interval> family;
  double prev_lo = 0.0, prev_hi = 0.0;
  for (int k = 0; k < count; ++k) {
    double r = r0 * std::pow(growth, k);
    double shrink = std::pow(growth, -k);
    double lo, hi;
    if (-r < domain.lower) {  // window covers the finite lower endpoint: inset it
      double inset = std::min(1.0, r0 / 8.0) * shrink;
      if (!family.empty() && prev_lo > domain.lower) inset = std::min(inset, (prev_lo - domain.lower) / 2);
      lo = domain.lower + inset;
    } else {
      lo = std::max(domain.lower, -r);
    }
    if (r > domain.upper) {
      double inset = std::min(1.0, r0 / 8.0) * shrink;
      if (!family.empty() && prev_hi < domain.upper) inset = std::min(inset, (domain.upper - prev_hi) / 2);
      hi = domain.upper - inset;
    } else {
      hi = std::min(domain.upper, r);
    }
    if (!(lo < hi))
      throw Error(ErrorKind::geometry, "truncation window does not intersect the domain; increase r0");
    if (!family.empty()) {
      bool identical = lo == prev_lo && hi == prev_hi;
      bool strict = lo < prev_lo && hi > prev_hi;
      if (!identical && !strict)
        throw Error(ErrorKind::internal, "truncation family lost strict nesting");
    }
    family.emplace_back(lo, hi);
    prev_lo = lo;
    prev_hi = hi;
  }
  return family;
}

ExhaustionTrace run_exhaustion(const ProblemSpec& problem, const std::vector<Interval>& family,
                               double h_target, const SolverConfig& cfg, double gap_tol) {
  if (family.empty()) throw Error(ErrorKind::argument, "empty truncation family");
  if (!(h_target > 0)) throw Error(ErrorKind::argument, "h_target must be positive");

  ExhaustionTrace trace;
  std::optional<Eigensolution> previous;

  for (size_t k = 0; k < family.size(); ++k) {
    const Interval& member = family[k];
    int n = nodes_for(member, h_target);
    SolverConfig member_cfg = cfg;
    if (previous)
      member_cfg.warm_start = interpolate_positive(previous->grid, previous->phi,
                                                   build_grid(member, n).nodes);
    // The warm start covers the full grid; drop the entry at the boundary node.
    auto solve_member = [&]() -> Eigensolution {
      if (!member_cfg.warm_start.empty()) {
        ProblemSpec restricted = problem.with_domain(member);
        Grid grid = build_grid(member, n);
        DiscreteOperator op = assemble(restricted, grid);
        std::vector<double> active(member_cfg.warm_start.begin() + op.active_offset,
                                   member_cfg.warm_start.begin() + op.active_offset + op.active_size());
        member_cfg.warm_start = std::move(active);
        Eigenpair pair = perron(op, member_cfg);
        Eigensolution s{std::move(pair), std::move(grid), op.bc_node, op.bc_side, {}};
        s.phi = op.extend(s.pair.phi);
        return s;
      }
      return solve_principal(problem.with_domain(member), n, member_cfg);
    };
    std::optional<Eigensolution> sol_opt;
    try {
      sol_opt = solve_member();
    } catch (const Error& e) {
      std::ostringstream os;
      os << "truncation " << k << " [" << member.lower << ", " << member.upper << "] failed: " << e.what();
      throw ExhaustionError(os.str(), std::move(trace));
    }
    Eigensolution& sol = *sol_opt;

    double radius = std::max(std::abs(member.lower), std::abs(member.upper));
    trace.radii.push_back(radius);
    trace.ns.push_back(n);
    trace.lambdas.push_back(sol.pair.lambda_est);
    trace.brackets.push_back({sol.pair.lambda_lo, sol.pair.lambda_hi});

    if (previous) {
      // Normalized eigenfunction gap on the common window, tracked as a diagnostic.
      double diff = 0.0;
      auto prev_on_new = interpolate_positive(previous->grid, previous->phi, sol.grid.nodes);
      for (int i = 0; i < sol.grid.n; ++i) {
        double x = sol.grid.nodes[i];
        if (x < previous->grid.interval.lower || x > previous->grid.interval.upper) continue;
        diff = std::max(diff, std::abs(prev_on_new[i] - sol.phi[i]));
      }
      trace.snapshot_diffs.push_back(diff);

      trace.last_gap = std::abs(trace.lambdas[trace.lambdas.size() - 2] - trace.lambdas.back());
      if (trace.last_gap < gap_tol) {
        trace.converged = true;
        previous = std::move(*sol_opt);
        break;
      }
    }
    previous = std::move(*sol_opt);
  }

  if (trace.converged) trace.lambda_limit = trace.lambdas.back();

  if (trace.lambdas.size() >= 3) {
    size_t m = trace.lambdas.size();
    double d1 = trace.lambdas[m - 2] - trace.lambdas[m - 3];
    double d2 = trace.lambdas[m - 1] - trace.lambdas[m - 2];
    double denom = d2 - d1;
    if (std::abs(denom) > 1e-14 * (std::abs(d1) + std::abs(d2)))
      trace.aitken = trace.lambdas[m - 1] - d2 * d2 / denom;
  }

  // Snapshot: final eigenfunction restricted to the smallest window.
  const Interval& smallest = family.front();
  for (int i = 0; i < previous->grid.n; ++i) {
    double x = previous->grid.nodes[i];
    if (x < smallest.lower || x > smallest.upper) continue;
    trace.snapshot_x.push_back(x);
    trace.snapshot_phi.push_back(previous->phi[i]);
  }
  return trace;
}

}  // namespace nlpev
