#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "nlpev/eigsolve.hpp"
#include "nlpev/problem.hpp"
#include "oracles.hpp"

using namespace nlpev;

TEST_CASE("validate passes constant data satisfying every assumption") {
  ProblemSpec p = oracles::constant_problem(1.0, 1.0, 1.0, 0.0);
  ValidationReport report = validate(p, 64);
  CHECK(report.passed());
  for (const auto& item : report.items) CHECK(item.pass);
}

TEST_CASE("validate flags an overclaimed kappa0 at the first sample") {
  ProblemSpec p = oracles::constant_problem(1.0, 1.0, 1.0, 0.0);
  p.kernel.kappa0 = 2.0;  // claims J >= 2 while J == 1
  ValidationReport report = validate(p, 64);
  CHECK_FALSE(report.passed());
  const ValidationItem* lower = report.find("A2-lower");
  REQUIRE(lower != nullptr);
  CHECK_FALSE(lower->pass);
  CHECK(lower->x.has_value());
}

TEST_CASE("validate rejects a tent kernel that dips under kappa0 inside the band") {
  // J(x,y) = max(0, 1 - 4|x-y|) falls to 0.04 at |x-y| = 0.24, below 0.1.
  ProblemSpec p = oracles::constant_problem(1.0, 1.0, 1.0, 0.0);
  p.kernel = KernelSpec{Kernel::tent_band(1.0, 0.25), 0.1, 1.0, 0.25, 0.25};
  ValidationReport report = validate(p, 64);
  const ValidationItem* lower = report.find("A2-lower");
  REQUIRE(lower != nullptr );
  CHECK_FALSE(lower->pass);
}

TEST_CASE("validate surfaces the q_inf_abs = 0 case as a warning, not a failure") {
  ProblemSpec p = oracles::constant_problem(1.0, 1.0, 1.0, 0.0);
  p.coeffs.q_inf_abs = 0.0;
  ValidationReport report = validate(p, 32);
  CHECK(report.passed());
  const ValidationItem* a4 = report.find("A4-inf-q");
  REQUIRE(a4 != nullptr);
  CHECK(a4->warning);
}

TEST_CASE("apply_operator is zero on the zero function") {
  ProblemSpec p = oracles::constant_problem(1.0, 1.0, 1.0, 0.0);
  Grid g = build_grid(p.domain, 33);
  SampledFunction zero{g, std::vector<double>(g.n, 0.0)};
  SampledFunction out = apply_operator(p, zero, zero);
  for (double v : out.values) CHECK(v == 0.0);
}

TEST_CASE("apply_operator reproduces q*phi' + mass + a*phi for constants") {
  // J == 1 on (0,1) with phi == 1: the integral is exactly 1 at every node.
  ProblemSpec p = oracles::constant_problem(1.0, 1.0, 1.0, 0.0);
  Grid g = build_grid(p.domain, 17);
  SampledFunction one{g, std::vector<double>(g.n, 1.0)};
  SampledFunction zero{g, std::vector<double>(g.n, 0.0)};
  SampledFunction out = apply_operator(p, one, zero);
  for (double v : out.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("apply_operator matches the symbolic value for phi(x) = x") {
  // q = 1, a = -1: result is 1 + 1/2 - x, exactly (trapezoid is exact on affine data).
  ProblemSpec p = oracles::constant_problem(1.0, 1.0, 1.0, -1.0);
  Grid g = build_grid(p.domain, 41);
  SampledFunction phi{g, g.nodes};
  SampledFunction prime{g, std::vector<double>(g.n, 1.0)};
  SampledFunction out = apply_operator(p, phi, prime);
  for (int i = 0; i < g.n; ++i)
    CHECK(out.values[i] == doctest::Approx(1.0 + 0.5 - g.nodes[i]).epsilon(1e-13));
}

TEST_CASE("apply_operator rejects mismatched grids") {
  ProblemSpec p = oracles::constant_problem(1.0, 1.0, 1.0, 0.0);
  Grid g1 = build_grid(p.domain, 11);
  Grid g2 = build_grid(p.domain, 13);
  SampledFunction phi{g1, std::vector<double>(g1.n, 1.0)};
  SampledFunction prime{g2, std::vector<double>(g2.n, 0.0)};
  CHECK_THROWS_AS(apply_operator(p, phi, prime), Error);
}

TEST_CASE("apply_operator is linear in phi") {
  ProblemSpec p = oracles::constant_problem(0.7, 0.8, 1.2, -0.3);
  Grid g = build_grid(p.domain, 29);
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  SampledFunction f{g, {}}, fp{g, {}}, s{g, {}}, sp{g, {}};
  for (int i = 0; i < g.n; ++i) {
    f.values.push_back(dist(rng));
    fp.values.push_back(dist(rng));
    s.values.push_back(dist(rng));
    sp.values.push_back(dist(rng));
  }
  const double alpha = 0.6, beta = -1.7;
  SampledFunction combo{g, {}}, combop{g, {}};
  for (int i = 0; i < g.n; ++i) {
    combo.values.push_back(alpha * f.values[i] + beta * s.values[i]);
    combop.values.push_back(alpha * fp.values[i] + beta * sp.values[i]);
  }
  SampledFunction lhs = apply_operator(p, combo, combop);
  SampledFunction af = apply_operator(p, f, fp);
  SampledFunction as = apply_operator(p, s, sp);
  for (int i = 0; i < g.n; ++i)
    CHECK(lhs.values[i] == doctest::Approx(alpha * af.values[i] + beta * as.values[i]).epsilon(1e-12));
}

TEST_CASE("rayleigh_bracket collapses on constant data with phi == 1") {
  ProblemSpec p = oracles::constant_problem(1.0, 1.0, 1.0, 0.0);
  Grid g = build_grid(p.domain, 21);
  SampledFunction one{g, std::vector<double>(g.n, 1.0)};
  SampledFunction zero{g, std::vector<double>(g.n, 0.0)};
  auto [lo, hi] = rayleigh_bracket(p, one, zero);
  CHECK(lo == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(hi == doctest::Approx(-1.0).epsilon(1e-14));
}

TEST_CASE("rayleigh_bracket matches the hand-evaluated ratios for phi = 1 + x") {
  ProblemSpec p = oracles::constant_problem(1.0, 1.0, 1.0, 0.0);
  Grid g = build_grid(p.domain, 51);
  SampledFunction phi{g, {}};
  for (double x : g.nodes) phi.values.push_back(1.0 + x);
  SampledFunction prime{g, std::vector<double>(g.n, 1.0)};
  auto [lo, hi] = rayleigh_bracket(p, phi, prime);
  CHECK(lo == doctest::Approx(-2.5).epsilon(1e-13));
  CHECK(hi == doctest::Approx(-1.25).epsilon(1e-13));
}

TEST_CASE("rayleigh_bracket requires positivity and orders its endpoints") {
  ProblemSpec p = oracles::constant_problem(1.0, 1.0, 1.0, 0.0);
  Grid g = build_grid(p.domain, 15);
  SampledFunction bad{g, std::vector<double>(g.n, 1.0)};
  bad.values[3] = 0.0;
  SampledFunction zero{g, std::vector<double>(g.n, 0.0)};
  CHECK_THROWS_AS(rayleigh_bracket(p, bad, zero), Error);

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(0.1, 2.0);
  for (int rep = 0; rep < 10; ++rep) {
    SampledFunction phi{g, {}}, prime{g, {}};
    for (int i = 0; i < g.n; ++i) {
      phi.values.push_back(dist(rng));
      prime.values.push_back(dist(rng) - 1.0);
    }
    auto [lo, hi] = rayleigh_bracket(p, phi, prime);
    CHECK(lo <= hi);
  }
}

TEST_CASE("rayleigh bracket with the upwind derivative contains the discrete eigenvalue") {
  oracles::RandomProblemGen gen(2024);
  for (int rep = 0; rep < 8; ++rep) {
    ProblemSpec p = gen.next(rep % 2 == 1);
    int n = 31 + 10 * (rep % 4);
    Grid g = build_grid(p.domain, n);
    Eigensolution sol = solve_principal(p, n, SolverConfig{.tol_bracket = 1e-9});

    std::mt19937_64 rng(100 + rep);
    std::uniform_real_distribution<double> dist(0.2, 2.0);
    SampledFunction phi{g, {}};
    for (int i = 0; i < g.n; ++i) phi.values.push_back(dist(rng));
    SampledFunction prime{g, upwind_derivative(g, p.coeffs.q_sign, phi.values)};
    auto [lo, hi] = rayleigh_bracket(p, phi, prime);
    CHECK(lo <= sol.pair.lambda_est + 1e-9);
    CHECK(hi >= sol.pair.lambda_est - 1e-9);
  }
}

TEST_CASE("shifting a by a constant shifts every ratio exactly") {
  ProblemSpec p = oracles::constant_problem(0.9, 0.7, 1.1, 0.4);
  Grid g = build_grid(p.domain, 33);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> dist(0.5, 1.5);
  SampledFunction phi{g, {}}, prime{g, {}};
  for (int i = 0; i < g.n; ++i) {
    phi.values.push_back(dist(rng));
    prime.values.push_back(dist(rng) - 1.0);
  }
  auto [lo1, hi1] = rayleigh_bracket(p, phi, prime);
  const double c = 2.75;
  ProblemSpec shifted = p.with_a(Coefficient::constant(0.4 + c));
  auto [lo2, hi2] = rayleigh_bracket(shifted, phi, prime);
  CHECK(lo2 == doctest::Approx(lo1 - c).epsilon(1e-12));
  CHECK(hi2 == doctest::Approx(hi1 - c).epsilon(1e-12));
}
