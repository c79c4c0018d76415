#pragma once

#include <optional>
#include <vector>

#include "nlpev/eigsolve.hpp"

namespace nlpev {

struct ExhaustionTrace {
  std::vector<double> radii;
  std::vector<int> ns;
  std::vector<double> lambdas;
  std::vector<BracketStep> brackets;
  bool converged = false;
  double lambda_limit = 0.0;
  double last_gap = 0.0;
  // Final eigenfunction restricted to the smallest window.
  std::vector<double> snapshot_x;
  std::vector<double> snapshot_phi;
  // Diagnostics: max-norm gap of consecutive normalized eigenfunctions on
  // their common window, and an Aitken extrapolation of the lambda sequence.
  std::vector<double> snapshot_diffs;
  std::optional<double> aitken;
};

/// Windows Omega_k = Omega intersect (-r0 g^k, r0 g^k) with finite domain
/// endpoints inset so consecutive closures nest strictly. Once a window covers
/// a bounded domain the family becomes constant (a fixed inset of the domain).
std::vector<Interval> truncation_family(const Interval& domain, double r0, double growth, int count);

/// Solves the truncations in order with grid spacing near h_target, warm
/// starting each solve from the previous eigenfunction. Stops early when the
/// consecutive eigenvalue gap drops below gap_tol.
ExhaustionTrace run_exhaustion(const ProblemSpec& problem, const std::vector<Interval>& family,
                               double h_target, const SolverConfig& cfg, double gap_tol);

/// A member solve failed; carries the members finished so far.
class ExhaustionError : public Error {
 public:
  ExhaustionError(const std::string& message, ExhaustionTrace partial)
      : Error(ErrorKind::nonconvergence, message), partial(std::move(partial)) {}
  ExhaustionTrace partial;
};

}  // namespace nlpev
