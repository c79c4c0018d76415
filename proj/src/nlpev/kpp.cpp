#include "nlpev/kpp.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nlpev/errors.hpp"

namespace nlpev {

namespace {

double kernel_mass(const KernelSpec& ks) {
  const int m = 8193;
  const double d1 = ks.delta1;
  const double h = 2.0 * d1 / (m - 1);
  double mass = 0.0;
  for (int i = 0; i < m; ++i) {
    double w = (i == 0 || i == m - 1) ? h / 2 : h;
    mass += w * ks.j(-d1 + i * h, 0.0);
  }
  return mass;
}

}  // namespace

KppSpec KppSpec::logistic(KernelSpec kernel, double speed_c, Coefficient growth_lin, double b,
                          double domain_radius, double carrying_bound) {
  if (!(b > 0)) throw Error(ErrorKind::argument, "logistic saturation b must be positive");
  return KppSpec{std::move(kernel),
                 speed_c,
                 [growth_lin, b](double x, double s) { return growth_lin(x) * s - b * s * s; },
                 growth_lin,
                 domain_radius,
                 carrying_bound};
}

ValidationReport validate_kpp(const KppSpec& spec, int mesh) {
  if (mesh < 2) throw Error(ErrorKind::argument, "mesh must be at least 2");
  ValidationReport report;
  report.mesh_size = mesh;
  const double R = spec.domain_radius;
  report.window_lower = -R;
  report.window_upper = R;

  {
    ValidationItem zero{.id = "kpp-f-zero", .detail = "f(x, 0) = 0"};
    ValidationItem dominated{.id = "kpp-f-dominated", .detail = "f(x, s) <= growth_lin(x) s"};
    ValidationItem hostile{.id = "kpp-hostile-tails",
                           .detail = "growth_lin < 0 for |x| >= carrying bound"};
    const double smax = std::max(1.0, 2.0 * spec.carrying_bound);
    for (int i = 0; i < mesh; ++i) {
      double x = -R + 2 * R * i / (mesh - 1);
      double lin = spec.growth_lin(x);
      if (zero.pass && std::abs(spec.growth(x, 0.0)) > 1e-12) {
        zero.pass = false;
        zero.x = x;
        zero.detail = "f(x, 0) != 0";
      }
      for (int k = 1; k <= 16; ++k) {
        double s = smax * k / 16.0;
        if (dominated.pass && spec.growth(x, s) > lin * s + 1e-12 * (1 + std::abs(lin * s))) {
          dominated.pass = false;
          dominated.x = x;
          dominated.y = s;
          dominated.detail = "f(x, s) exceeds growth_lin(x) s";
        }
      }
      if (hostile.pass && std::abs(x) >= spec.carrying_bound && !(lin < 0)) {
        hostile.pass = false;
        hostile.x = x;
        hostile.detail = "growth_lin is not negative outside the niche";
      }
    }
    report.items.push_back(std::move(zero));
    report.items.push_back(std::move(dominated));
    report.items.push_back(std::move(hostile));
  }

  {
    ValidationItem ti{.id = "kpp-kernel-invariant", .detail = "kernel depends on x - y only"};
    const double d1 = spec.kernel.delta1;
    for (int k = 0; k < 9 && ti.pass; ++k) {
      double t = -2 * d1 + 4 * d1 * k / 8.0;
      for (int m2 = 0; m2 < 9; ++m2) {
        double z = -1.1 * d1 + 2.2 * d1 * m2 / 8.0;
        if (std::abs(spec.kernel.j(z + t, t) - spec.kernel.j(z, 0.0)) > 1e-12 * (1 + spec.kernel.kappa1)) {
          ti.pass = false;
          ti.x = z + t;
          ti.y = t;
          ti.detail = "kernel is not translation invariant";
          break;
        }
      }
    }
    report.items.push_back(std::move(ti));
  }
  return report;
}

ProblemSpec linearized_problem(const KppSpec& spec) {
  if (!(spec.speed_c > 0))
    throw Error(ErrorKind::validation,
                "c = 0 makes inf |q| vanish (A4 fails); the drift-free problem is out of scope here");
  if (!(spec.domain_radius > 0)) throw Error(ErrorKind::argument, "domain radius must be positive");

  const double m = kernel_mass(spec.kernel);
  const double c = spec.speed_c;
  Coefficient lin = spec.growth_lin;
  Coefficient a = Coefficient::custom([lin, m](double x) { return lin(x) - m; },
                                      lin.description() + " - " + std::to_string(m));

  Kernel j0 = spec.kernel.j;
  ProblemSpec p{
      Interval(-spec.domain_radius, spec.domain_radius),
      KernelSpec{Kernel::custom([j0](double x, double y) { return j0(x - y, 0.0); },
                                "translation-invariant " + j0.description()),
                 spec.kernel.kappa0, spec.kernel.kappa1, spec.kernel.delta0, spec.kernel.delta1},
      CoefficientSpec{Coefficient::constant(c), a, c, QSign::positive, c, 0.0},
  };
  return p.with_a(a);  // records a sampled sup-norm for the assembled coefficient
}

SimResult simulate(const KppSpec& spec, const SimOptions& options) {
  ProblemSpec lin = linearized_problem(spec);
  const double R = spec.domain_radius;
  const double c = spec.speed_c;
  const double m = kernel_mass(spec.kernel);

  const int n = std::max(3, static_cast<int>(std::lround(2 * R / options.h)) + 1);
  Grid grid = build_grid(Interval(-R, R), n);
  const double h = grid.spacing();

  double lin_sup = 0.0;
  for (double x : grid.nodes) lin_sup = std::max(lin_sup, std::abs(spec.growth_lin(x)));
  const double budget = std::min(h / c, 1.0 / (m + lin_sup + 1.0));
  double dt = options.dt;
  if (dt <= 0) dt = 0.9 * budget;
  if (dt > budget * (1 + 1e-12)) {
    std::ostringstream os;
    os << "dt = " << dt << " violates the stability budget " << budget
       << " (upwind CFL and explicit-step bound)";
    throw Error(ErrorKind::argument, os.str());
  }

  // Eigenvalue of the linearization on the same grid.
  SolverConfig solver_cfg = options.solver;
  Eigensolution eig = solve_principal(lin, n, solver_cfg);

  // Banded convolution weights: J0 at node offsets.
  const int band = std::min(n - 1, static_cast<int>(std::ceil(spec.kernel.delta1 / h)) + 1);
  std::vector<double> jrow(2 * band + 1);
  for (int k = -band; k <= band; ++k) jrow[k + band] = spec.kernel.j(k * h, 0.0);

  double deficit = 0.0;  // mass missing from the truncated quadrature near the edges
  for (int i = 0; i < n; i += std::max(1, n / 64)) {
    double mass_i = 0.0;
    for (int k = std::max(0, i - band); k <= std::min(n - 1, i + band); ++k)
      mass_i += grid.weights[k] * jrow[k - i + band];
    deficit = std::max(deficit, m - mass_i);
  }

  const double v0 = options.v0_scale > 0 ? options.v0_scale : std::min(1.0, spec.carrying_bound);
  std::vector<double> v(n, 0.0), next(n);
  for (int i = 0; i < n; ++i)
    if (std::abs(grid.nodes[i]) <= 1.0) v[i] = v0;

  const double vcap = std::max(spec.carrying_bound, v0);
  const long steps = static_cast<long>(std::ceil(options.t_end / dt));

  SimResult result;
  result.dt = dt;
  result.n = n;
  auto record = [&](double t) {
    result.t_history.push_back(t);
    result.maxv_history.push_back(*std::max_element(v.begin(), v.end()));
  };
  record(0.0);
  if (options.frame_sink && options.frame_every > 0) options.frame_sink(0.0, grid.nodes, v);

  for (long step = 1; step <= steps; ++step) {
    for (int i = 0; i < n; ++i) {
      double upwind = ((i + 1 < n ? v[i + 1] : 0.0) - v[i]) / h;  // zero inflow at +R
      double conv = 0.0;
      for (int k = std::max(0, i - band); k <= std::min(n - 1, i + band); ++k)
        conv += grid.weights[k] * jrow[k - i + band] * v[k];
      double x = grid.nodes[i];
      next[i] = v[i] + dt * (c * upwind + conv - m * v[i] + spec.growth(x, v[i]));
    }
    std::swap(v, next);
    for (double val : v) {
      if (!(val >= -1e-12) || val > vcap * (1 + 1e-9) || !std::isfinite(val))
        throw Error(ErrorKind::internal, "explicit step left the invariant region [0, max(A, v0)]");
    }
    for (double& val : v) val = std::max(val, 0.0);
    double t = step * dt;
    if (options.record_every > 0 && step % options.record_every == 0) record(t);
    if (options.frame_sink && options.frame_every > 0 && step % options.frame_every == 0)
      options.frame_sink(t, grid.nodes, v);
  }
  if (result.t_history.back() != steps * dt) record(steps * dt);
  result.steps = steps;
  result.edge_mass_deficit = deficit;

  PersistenceVerdict verdict;
  verdict.lambda_lin = eig.pair.lambda_est;
  verdict.predicted_persist = verdict.lambda_lin < 0;
  verdict.simulated_mass = result.maxv_history.back();
  verdict.mass_tol = options.mass_tol;
  verdict.agree = verdict.predicted_persist ? verdict.simulated_mass > options.mass_tol
                                            : verdict.simulated_mass <= options.mass_tol;
  result.verdict = verdict;
  return result;
}

}  // namespace nlpev
