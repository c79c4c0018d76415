#include "nlpev/harnack.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "nlpev/errors.hpp"

namespace nlpev {

namespace {

// Cumulative antiderivative of f on a fine uniform grid, linearly interpolated
// between samples. Used for the exponential weights in K and K~.
class Antiderivative {
 public:
  Antiderivative(const Coefficient& f, double lo, double hi, int m) : lo_(lo), h_((hi - lo) / (m - 1)) {
    std::vector<double> samples(m);
    for (int i = 0; i < m; ++i) samples[i] = f(lo_ + i * h_);
    values_.resize(m);
    values_[0] = 0.0;
    for (int i = 1; i < m; ++i) values_[i] = values_[i - 1] + h_ / 2 * (samples[i - 1] + samples[i]);
  }

  double operator()(double t) const {
    double s = (t - lo_) / h_;
    int i = std::clamp(static_cast<int>(std::floor(s)), 0, static_cast<int>(values_.size()) - 2);
    double frac = s - i;
    return values_[i] + frac * (values_[i + 1] - values_[i]);
  }

 private:
  double lo_, h_;
  std::vector<double> values_;
};

double checked_q(const ProblemSpec& p, double x) {
  double q = p.coeffs.q(x);
  if (!(q > 0))
    throw Error(ErrorKind::argument, "Harnack constants require q > 0; reflect the problem first");
  return q;
}

}  // namespace

HarnackConstants compute_constants(const ProblemSpec& problem, double r1, double r2, double eps,
                                   int mesh) {
  if (!(r1 <= r2)) throw Error(ErrorKind::argument, "window requires r1 <= r2");
  const double d1 = problem.kernel.delta1;
  const double d0 = problem.kernel.delta0;
  const Interval& dom = problem.domain;

  if (!(eps > 0)) {
    double slack = dom.boundary_distance(r1 - d1, r2 + d1);
    if (!(slack > 0))
      throw Error(ErrorKind::geometry, "[r1-delta1, r2+delta1] must sit strictly inside the domain");
    eps = std::min(d1, slack / 2);
    if (std::isinf(slack)) eps = d1;
  }

  HarnackConstants hc;
  hc.eps = eps;
  double wlo = r1 - d1 - eps, whi = r2 + d1 + eps;
  double dist = dom.boundary_distance(wlo, whi);
  if (!(dist > 0))
    throw Error(ErrorKind::geometry, "[r1-delta1-eps, r2+delta1+eps] must sit strictly inside the domain");
  hc.d = std::min(1.0, dist);
  hc.delta = std::min({d0 / 2, hc.d / 2, eps});
  hc.n_chain = static_cast<long>(std::ceil(4.0 * (r2 - r1 + 2 * d1) / hc.delta));

  // Shared antiderivative of a/q over everything the kernels below touch.
  double alo = std::max(wlo - d0, std::isfinite(dom.lower) ? dom.lower : wlo - d0);
  double ahi = std::min(whi + hc.delta + d0, std::isfinite(dom.upper) ? dom.upper : whi + hc.delta + d0);
  Coefficient aq = Coefficient::custom(
      [p = problem](double x) { return p.coeffs.a(x) / checked_q(p, x); }, "a/q");
  Antiderivative G(aq, alo, ahi, std::max(1025, 8 * mesh));

  // kappa~0: sampled infimum of K~(x,y) = J(x,y)/q(x) * exp(int_y^x a/q) over
  // x in [r1-d1-eps, r2+d1+eps+delta], y in (x-delta0, x+delta0), times 0.99.
  {
    double inf = std::numeric_limits<double>::infinity();
    double xhi = whi + hc.delta;
    for (int i = 0; i < mesh; ++i) {
      double x = wlo + (xhi - wlo) * i / (mesh - 1);
      double qx = checked_q(problem, x);
      for (int k = 0; k < mesh; ++k) {
        double y = x - d0 + 2 * d0 * (k + 0.5) / mesh;  // interior samples of the open band
        if (y <= alo || y >= ahi || !dom.contains(y)) continue;
        double v = problem.kernel.j(x, y) / qx * std::exp(G(x) - G(y));
        inf = std::min(inf, v);
      }
    }
    if (!std::isfinite(inf) || !(inf > 0))
      throw Error(ErrorKind::validation, "sampled band infimum of K~ is not positive");
    hc.kappa_tilde0 = 0.99 * inf;
  }

  // C1: sampled sup of K(x,y) = J(x,y)/q(x) * exp(int_y^x (a/q + 1)) over
  // (r1, r2) x (r1-d1, r2+d1), times 1.01.
  {
    double sup = 0.0;
    for (int i = 0; i < mesh; ++i) {
      double x = r1 + (r2 - r1) * (i + 0.5) / mesh;
      if (r2 == r1) x = r1;
      double qx = checked_q(problem, x);
      for (int k = 0; k < mesh; ++k) {
        double y = r1 - d1 + (r2 - r1 + 2 * d1) * (k + 0.5) / mesh;
        if (!dom.contains(y)) continue;
        double v = problem.kernel.j(x, y) / qx * std::exp(G(x) - G(y) + (x - y));
        sup = std::max(sup, v);
      }
    }
    hc.c1 = 1.01 * sup;
  }

  const double ln8 = std::log(8.0);
  hc.log_c3 = hc.n_chain * (std::log(hc.kappa_tilde0) + 2 * std::log(hc.delta) - hc.delta - ln8);
  hc.log_c2 = hc.log_c3 + std::log(hc.kappa_tilde0) + std::log(hc.delta) - hc.delta -
              std::log(static_cast<double>(hc.n_chain));
  hc.log_c0 = std::max(std::log(hc.c1) - hc.log_c2, r2 - r1);

  double aq_sup = 0.0;
  for (int i = 0; i < mesh; ++i) {
    double x = r1 + (r2 - r1) * i / (mesh - 1);
    if (r2 == r1) x = r1;
    aq_sup = std::max(aq_sup, std::abs(problem.coeffs.a(x)) / checked_q(problem, x));
  }
  hc.log_c = hc.log_c0 + (r2 - r1) * (1 + aq_sup);

  hc.c3 = std::exp(hc.log_c3);
  hc.c2 = std::exp(hc.log_c2);
  hc.c0 = std::exp(hc.log_c0);
  hc.c = std::exp(hc.log_c);
  return hc;
}

std::pair<SampledFunction, SampledFunction> transforms(const ProblemSpec& problem,
                                                       const SampledFunction& u) {
  const Grid& g = u.grid;
  if (u.values.size() != static_cast<size_t>(g.n)) throw Error(ErrorKind::shape, "values/grid mismatch");
  const double h = g.spacing();
  std::vector<double> aq(g.n);
  for (int i = 0; i < g.n; ++i) {
    double q = problem.coeffs.q(g.nodes[i]);
    if (q == 0.0) throw Error(ErrorKind::argument, "q vanishes on the grid");
    aq[i] = problem.coeffs.a(g.nodes[i]) / q;
  }
  SampledFunction w{g, std::vector<double>(g.n)};
  SampledFunction wt{g, std::vector<double>(g.n)};
  double acc = 0.0;  // integral of a/q from the first node
  for (int i = 0; i < g.n; ++i) {
    if (i > 0) acc += h / 2 * (aq[i - 1] + aq[i]);
    wt.values[i] = std::exp(acc) * u.values[i];
    w.values[i] = std::exp(acc + (g.nodes[i] - g.nodes[0])) * u.values[i];
  }
  return {std::move(w), std::move(wt)};
}

HarnackReport verify(const ProblemSpec& problem, const Eigensolution& solution, double r1, double r2,
                     double eps) {
  if (problem.coeffs.q_sign == QSign::negative) {
    // Reflect everything onto the q > 0 orientation; the ratio is invariant.
    ProblemSpec mirrored = reflect(problem);
    const double sum = problem.domain.lower + problem.domain.upper;
    Eigensolution msol = solution;
    std::reverse(msol.phi.begin(), msol.phi.end());
    std::reverse(msol.pair.phi.begin(), msol.pair.phi.end());
    msol.bc_node = solution.grid.n - 1 - solution.bc_node;
    msol.bc_side = 1 - solution.bc_side;
    HarnackReport report = verify(mirrored, msol, sum - r2, sum - r1, eps);
    report.r1 = r1;
    report.r2 = r2;
    report.reflected = true;
    return report;
  }

  // The eigenpair solves M[phi] + a phi + lambda phi = 0, so phi is a positive
  // solution of the linear equation with coefficient a + lambda.
  const double lambda = solution.pair.lambda_est;
  Coefficient a = problem.coeffs.a;
  ProblemSpec shifted = problem.with_a(
      Coefficient::custom([a, lambda](double x) { return a(x) + lambda; }, "a + lambda"));

  HarnackReport report;
  report.r1 = r1;
  report.r2 = r2;
  report.constants = compute_constants(shifted, r1, r2, eps);

  const Grid& g = solution.grid;
  double mn = std::numeric_limits<double>::infinity(), mx = 0.0;
  int count = 0;
  for (int i = 0; i < g.n; ++i) {
    if (g.nodes[i] < r1 || g.nodes[i] > r2) continue;
    mn = std::min(mn, solution.phi[i]);
    mx = std::max(mx, solution.phi[i]);
    ++count;
  }
  if (count < 2) throw Error(ErrorKind::geometry, "window contains fewer than two grid nodes");
  if (!(mn > 0)) throw Error(ErrorKind::positivity, "eigenfunction is not positive on the window");
  report.empirical_ratio = mx / mn;
  report.log_empirical = std::log(report.empirical_ratio);
  report.pass = report.log_empirical <= report.constants.log_c;

  // Discrete monotonicity of w~. Each step is allowed the per-step upwind
  // truncation slack w~_i (e^{h dg/2} - 1) plus the solver residual carried
  // through the exponential weight.
  auto [w, wt] = transforms(shifted, SampledFunction{g, solution.phi});
  const double h = g.spacing();
  double wt_max = *std::max_element(wt.values.begin(), wt.values.end());
  double worst = -std::numeric_limits<double>::infinity();
  for (int i = 0; i + 1 < g.n; ++i) {
    double qi = problem.coeffs.q(g.nodes[i]);
    double gi = shifted.coeffs.a(g.nodes[i]) / qi;
    double gi1 = shifted.coeffs.a(g.nodes[i + 1]) / problem.coeffs.q(g.nodes[i + 1]);
    double slack = wt.values[i] * std::max(0.0, std::exp(h * (gi1 - gi) / 2) - 1.0);
    double envelope = wt.values[i + 1] / std::max(solution.phi[i + 1], 1e-300);
    if (solution.phi[i + 1] == 0.0) envelope = wt.values[i] / std::max(solution.phi[i], 1e-300);
    double allowed = slack + h * envelope * solution.pair.residual / qi + 1e-13 * wt_max;
    worst = std::max(worst, wt.values[i + 1] - wt.values[i] - allowed);
  }
  report.wtilde_max_violation = worst;
  report.wtilde_monotone = worst <= 0.0;
  return report;
}

}  // namespace nlpev
