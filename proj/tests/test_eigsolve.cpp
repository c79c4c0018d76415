#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "nlpev/eigsolve.hpp"
#include "oracles.hpp"

using namespace nlpev;

TEST_CASE("perron solves A = -I in one certified iterate") {
  DenseMatrix a(2);
  a.at(0, 0) = a.at(1, 1) = -1.0;
  Eigenpair pair = perron(a, 2.0, SolverConfig{});
  CHECK(pair.lambda_est == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(pair.lambda_lo == doctest::Approx(1.0));
  CHECK(pair.lambda_hi == doctest::Approx(1.0));
  CHECK(pair.iterations == 1);
}

TEST_CASE("perron finds the Perron pair of the symmetric permutation") {
  DenseMatrix a(2);
  a.at(0, 1) = a.at(1, 0) = 1.0;
  Eigenpair pair = perron(a, 1.0, SolverConfig{});
  CHECK(pair.lambda_est == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(pair.phi[0] == doctest::Approx(1.0));
  CHECK(pair.phi[1] == doctest::Approx(1.0));
}

TEST_CASE("perron brackets the dense-oracle value on random nonnegative matrices") {
  std::mt19937_64 rng(314);
  std::uniform_real_distribution<double> dist(0.05, 1.0);
  for (int rep = 0; rep < 12; ++rep) {
    DenseMatrix a(4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) a.at(i, j) = dist(rng);
    Eigenpair pair = perron(a, 1.0, SolverConfig{.tol_bracket = 1e-9});
    double oracle = -oracles::perron_value(a);
    CHECK(pair.lambda_lo <= oracle + 1e-12);
    CHECK(pair.lambda_hi >= oracle - 1e-12);
    CHECK(pair.lambda_hi - pair.lambda_lo < 1e-9);
  }
}

TEST_CASE("perron rejects non-Metzler matrices and exhausted budgets carry the bracket") {
  DenseMatrix bad(2);
  bad.at(0, 1) = -0.5;
  CHECK_THROWS_AS(perron(bad, 1.0, SolverConfig{}), Error);

  DenseMatrix slow(3);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> dist(0.1, 1.0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) slow.at(i, j) = dist(rng);
  try {
    perron(slow, 0.5, SolverConfig{.tol_bracket = 1e-16, .max_iters = 3});
    FAIL("expected non-convergence");
  } catch (const NonConvergenceError& e) {
    CHECK(e.iterations == 3);
    CHECK(e.lambda_lo <= e.lambda_hi);
  }
}

TEST_CASE("bracket history is monotone for the power iteration") {
  oracles::RandomProblemGen gen(77);
  for (int rep = 0; rep < 6; ++rep) {
    ProblemSpec p = gen.next(rep % 2 == 1, true);
    Grid g = build_grid(p.domain, 41);
    DiscreteOperator op = assemble(p, g);
    Eigenpair pair = perron(op, SolverConfig{.tol_bracket = 1e-8, .strategy = PerronStrategy::power});
    double scale = std::max(1.0, std::abs(pair.lambda_est));
    for (size_t k = 1; k < pair.history.size(); ++k) {
      CHECK(pair.history[k].lo >= pair.history[k - 1].lo - 1e-12 * scale);
      CHECK(pair.history[k].hi <= pair.history[k - 1].hi + 1e-12 * scale);
    }
  }
}

TEST_CASE("brackets contain the dense oracle at every recorded iterate") {
  oracles::RandomProblemGen gen(901);
  for (int rep = 0; rep < 6; ++rep) {
    ProblemSpec p = gen.next(rep % 3 == 0);
    int n = 21 + 8 * rep;  // active sizes up to 60
    Grid g = build_grid(p.domain, n);
    DiscreteOperator op = assemble(p, g);
    double oracle = -oracles::perron_value(op.matrix);
    Eigenpair pair = perron(op, SolverConfig{.tol_bracket = 1e-8, .strategy = PerronStrategy::power});
    for (const auto& step : pair.history) {
      CHECK(step.lo <= oracle + 1e-10);
      CHECK(step.hi >= oracle - 1e-10);
    }
    CHECK(pair.lambda_lo <= oracle + 1e-10);
    CHECK(pair.lambda_hi >= oracle - 1e-10);
  }
}

TEST_CASE("shift-invert agrees with the power path and the oracle") {
  oracles::RandomProblemGen gen(555);
  for (int rep = 0; rep < 4; ++rep) {
    ProblemSpec p = gen.next(rep % 2 == 1, true);
    Grid g = build_grid(p.domain, 45);
    DiscreteOperator op = assemble(p, g);
    SolverConfig cfg{.tol_bracket = 1e-9};
    cfg.strategy = PerronStrategy::power;
    Eigenpair a = perron(op, cfg);
    cfg.strategy = PerronStrategy::shift_invert;
    Eigenpair b = perron(op, cfg);
    double oracle = -oracles::perron_value(op.matrix);
    CHECK(std::abs(a.lambda_est - b.lambda_est) < 2e-9);
    CHECK(b.lambda_lo <= oracle + 1e-12);
    CHECK(b.lambda_hi >= oracle - 1e-12);
    CHECK(b.iterations <= a.iterations);
  }
}

TEST_CASE("solve_principal matches a dense oracle across resolutions") {
  // (0,1), J == 1, q = 0.2, a = 0: n = 101 against the oracle at n = 51.
  ProblemSpec p = oracles::constant_problem(1.0, 1.0, 0.2, 0.0, Interval(0.0, 1.0));
  Eigensolution fine = solve_principal(p, 101, SolverConfig{.tol_bracket = 1e-8});
  DiscreteOperator coarse = assemble(p, build_grid(p.domain, 51));
  double oracle = -oracles::perron_value(coarse.matrix);
  CHECK(std::abs(fine.pair.lambda_est - oracle) < 1e-2);
}

TEST_CASE("solve_principal pins the eigenfunction to zero at the outflow endpoint") {
  ProblemSpec p = oracles::constant_problem(1.0, 1.0, 0.5, 0.0, Interval(0.0, 1.0));
  Eigensolution sol = solve_principal(p, 41, SolverConfig{});
  CHECK(sol.bc_side == 1);
  CHECK(sol.phi.back() == 0.0);
  CHECK(sol.phi.front() > 0.0);
  for (int i = 0; i + 1 < sol.grid.n; ++i) CHECK(sol.phi[i] > 0.0);
  CHECK(*std::max_element(sol.phi.begin(), sol.phi.end()) == doctest::Approx(1.0));
  CHECK(sol.pair.residual <= 1e-6);
}

TEST_CASE("adding a constant to a shifts the eigenvalue by exactly minus that constant") {
  ProblemSpec p = oracles::constant_problem(1.0, 1.0, 0.7, 0.0, Interval(0.0, 1.0));
  SolverConfig cfg{.tol_bracket = 1e-9};
  double base = solve_principal(p, 61, cfg).pair.lambda_est;
  double shifted = solve_principal(p.with_a(Coefficient::constant(5.0)), 61, cfg).pair.lambda_est;
  CHECK(std::abs(shifted - (base - 5.0)) <= 4e-9);  // two bracket halves
}

TEST_CASE("reflect flips the sign of constant q and is an involution on samples") {
  ProblemSpec p = oracles::constant_problem(1.0, 1.0, 1.0, 0.3, Interval(0.0, 1.0));
  ProblemSpec r = reflect(p);
  CHECK(r.coeffs.q_sign == QSign::negative);
  for (int i = 0; i <= 16; ++i) {
    double x = i / 16.0;
    CHECK(r.coeffs.q(x) == doctest::Approx(-1.0));
    CHECK(r.coeffs.a(x) == doctest::Approx(0.3));
  }

  ProblemSpec affine = p;
  affine.coeffs.q = Coefficient::affine(1.0, 1.0);  // q(x) = 1 + x on (0,1)
  affine.coeffs.q_sup = 2.0;
  ProblemSpec ra = reflect(affine);
  for (int i = 0; i <= 16; ++i) {
    double x = i / 16.0;
    CHECK(ra.coeffs.q(x) == doctest::Approx(x - 2.0).epsilon(1e-14));
  }

  ProblemSpec twice = reflect(ra);
  for (int i = 0; i < 64; ++i) {
    double x = i / 63.0;
    CHECK(twice.coeffs.q(x) == doctest::Approx(affine.coeffs.q(x)).epsilon(1e-14));
    CHECK(twice.coeffs.a(x) == doctest::Approx(affine.coeffs.a(x)).epsilon(1e-14));
    CHECK(twice.kernel.j(x, 1.0 - x) == doctest::Approx(affine.kernel.j(x, 1.0 - x)).epsilon(1e-14));
  }

  CHECK_THROWS_AS(reflect(oracles::constant_problem(1, 1, 1, 0, Interval::whole_line())), Error);
}

TEST_CASE("solving through the reflection reproduces the direct eigenpair") {
  ProblemSpec p = oracles::constant_problem(1.0, 1.0, 1.0, 0.0, Interval(0.0, 1.0));
  SolverConfig cfg{.tol_bracket = 1e-8};
  Eigensolution direct = solve_principal(p, 101, cfg);
  Eigensolution mirrored = solve_via_reflection(p, 101, cfg);

  CHECK(std::abs(direct.pair.lambda_est - mirrored.pair.lambda_est) <= 2 * cfg.tol_bracket);
  CHECK(mirrored.bc_node == direct.bc_node);
  CHECK(mirrored.bc_side == direct.bc_side);
  CHECK(mirrored.phi.back() == 0.0);
  double gap = 0.0;
  for (int i = 0; i < direct.grid.n; ++i)
    gap = std::max(gap, std::abs(direct.phi[i] - mirrored.phi[i]));
  CHECK(gap <= 10 * cfg.tol_bracket);
}

TEST_CASE("reflection identity holds for non-constant q of either sign") {
  oracles::RandomProblemGen gen(4242);
  for (int rep = 0; rep < 6; ++rep) {
    ProblemSpec p = gen.next(rep % 2 == 1, true);
    SolverConfig cfg{.tol_bracket = 1e-8};
    Eigensolution direct = solve_principal(p, 81, cfg);
    Eigensolution mirrored = solve_via_reflection(p, 81, cfg);
    CHECK(std::abs(direct.pair.lambda_est - mirrored.pair.lambda_est) <= 2 * cfg.tol_bracket);
  }
}

TEST_CASE("solve_principal refuses unbounded domains and degenerate bands") {
  ProblemSpec unbounded = oracles::constant_problem(1.0, 1.0, 1.0, 0.0, Interval::whole_line());
  CHECK_THROWS_AS(solve_principal(unbounded, 51, SolverConfig{}), Error);

  // delta0 below the grid spacing breaks the irreducibility band.
  ProblemSpec narrow = oracles::constant_problem(1.0, 0.001, 1.0, 0.0, Interval(0.0, 1.0));
  CHECK_THROWS_AS(solve_principal(narrow, 11, SolverConfig{}), Error);
}
