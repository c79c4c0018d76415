#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nlpev/functions.hpp"
#include "nlpev/grid.hpp"
#include "nlpev/interval.hpp"

namespace nlpev {

/// Kernel together with its declared non-degeneracy certificate:
/// kappa0 * 1_{|x-y|<delta0} <= J(x,y) <= kappa1 * 1_{|x-y|<delta1}.
struct KernelSpec {
  Kernel j;
  double kappa0;
  double kappa1;
  double delta0;
  double delta1;
};

struct CoefficientSpec {
  Coefficient q;
  Coefficient a;
  double q_inf_abs = 0.0;  // declared inf |q|; zero means the A4 certificate is not claimed
  QSign q_sign = QSign::positive;
  double q_sup = 0.0;
  double a_sup = 0.0;
};

struct ProblemSpec {
  Interval domain;
  KernelSpec kernel;
  CoefficientSpec coeffs;

  ProblemSpec with_domain(const Interval& d) const;
  ProblemSpec with_a(const Coefficient& a) const;  // a_sup re-estimated by sampling
  ProblemSpec with_kernel(const KernelSpec& k) const;
};

struct SampledFunction {
  Grid grid;
  std::vector<double> values;
};

SampledFunction make_sampled(const Grid& grid, const Coefficient& f);

struct ValidationItem {
  std::string id;        // e.g. "A2-lower"
  bool pass = true;
  bool warning = false;  // informational; does not fail the report
  std::string detail;
  std::optional<double> x;  // first violating sample, when applicable
  std::optional<double> y;
};

struct ValidationReport {
  std::vector<ValidationItem> items;
  int mesh_size = 0;
  double window_lower = 0.0;  // sampling window (equals the domain when bounded)
  double window_upper = 0.0;

  bool passed() const {
    for (const auto& it : items)
      if (!it.pass && !it.warning) return false;
    return true;
  }
  const ValidationItem* find(const std::string& id) const {
    for (const auto& it : items)
      if (it.id == id) return &it;
    return nullptr;
  }
};

/// Samples the standing assumptions on a uniform mesh. Violations are
/// reported, never thrown. Unbounded domains are sampled on a bounded window.
ValidationReport validate(const ProblemSpec& problem, int mesh_size);

/// Bounded window used for sampling-based checks; equals the domain when it
/// is bounded, otherwise clips unbounded sides a few kernel horizons out.
std::pair<double, double> default_sampling_window(const Interval& domain, double delta1);

/// q*phi' + quadrature of J(x,.)*phi over the grid + a*phi, per node.
SampledFunction apply_operator(const ProblemSpec& problem, const SampledFunction& phi,
                               const SampledFunction& phi_prime);

/// min / max over nodes of -(M[phi] + a*phi)/phi for positive phi.
std::pair<double, double> rayleigh_bracket(const ProblemSpec& problem, const SampledFunction& phi,
                                           const SampledFunction& phi_prime);

}  // namespace nlpev
