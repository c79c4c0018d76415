#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "nlpev/discretize.hpp"
#include "nlpev/eigsolve.hpp"
#include "oracles.hpp"

using namespace nlpev;

TEST_CASE("build_grid produces trapezoid weights") {
  Grid g = build_grid(Interval(0.0, 1.0), 3);
  CHECK(g.nodes == std::vector<double>{0.0, 0.5, 1.0});
  CHECK(g.weights == std::vector<double>{0.25, 0.5, 0.25});

  Grid g2 = build_grid(Interval(-2.0, 2.0), 5);
  CHECK(g2.nodes == std::vector<double>{-2.0, -1.0, 0.0, 1.0, 2.0});
  CHECK(g2.weights == std::vector<double>{0.5, 1.0, 1.0, 1.0, 0.5});

  for (int n : {5, 17, 40}) {
    Grid g3 = build_grid(Interval(-2.0, 2.0), n);
    double sum = 0.0;
    for (double w : g3.weights) sum += w;
    CHECK(sum == doctest::Approx(4.0).epsilon(1e-14));
  }
}

TEST_CASE("build_grid rejects unbounded intervals and tiny node counts") {
  CHECK_THROWS_AS(build_grid(Interval::whole_line(), 11), Error);
  CHECK_THROWS_AS(build_grid(Interval(0.0, 1.0), 2), Error);
}

TEST_CASE("assemble reproduces the hand-built 2x2 system") {
  // (0,1), J = 1, q = 1, a = 0, n = 3: active nodes {0, 0.5}.
  ProblemSpec p = oracles::constant_problem(1.0, 1.0, 1.0, 0.0, Interval(0.0, 1.0));
  Grid g = build_grid(p.domain, 3);
  DiscreteOperator op = assemble(p, g);

  CHECK(op.bc_node == 2);
  CHECK(op.bc_side == 1);
  CHECK(op.active_size() == 2);
  CHECK(op.matrix.at(0, 0) == doctest::Approx(-2.0 + 0.25));
  CHECK(op.matrix.at(0, 1) == doctest::Approx(2.0 + 0.5));
  CHECK(op.matrix.at(1, 0) == doctest::Approx(0.25));
  CHECK(op.matrix.at(1, 1) == doctest::Approx(-2.0 + 0.5));
  CHECK(op.metzler_shift == doctest::Approx(1.75 + 1.0));
}

TEST_CASE("assemble keeps off-diagonals nonnegative for both drift signs") {
  oracles::RandomProblemGen gen(11);
  for (int rep = 0; rep < 10; ++rep) {
    ProblemSpec p = gen.next(rep % 2 == 1, true);
    Grid g = build_grid(p.domain, 41);
    DiscreteOperator op = assemble(p, g);
    for (int i = 0; i < op.active_size(); ++i) {
      for (int j = 0; j < op.active_size(); ++j) {
        if (i != j) CHECK(op.matrix.at(i, j) >= 0.0);
      }
      CHECK(op.matrix.at(i, i) + op.metzler_shift >= 0.0);
    }
    // bc encoding: q > 0 deletes the last node, q < 0 the first.
    if (p.coeffs.q_sign == QSign::positive) {
      CHECK(op.bc_node == g.n - 1);
      CHECK(op.active_offset == 0);
    } else {
      CHECK(op.bc_node == 0);
      CHECK(op.active_offset == 1);
    }
  }
}

TEST_CASE("quadrature row sums are exact for J == 1 inside the span") {
  // With a global band the integral row equals the full trapezoid mass.
  ProblemSpec p = oracles::constant_problem(1.0, 8.0, 1.0, 0.0, Interval(-2.0, 2.0));
  Grid g = build_grid(p.domain, 21);
  DiscreteOperator op = assemble(p, g);
  const double h = g.spacing();
  for (int i = 0; i < op.active_size(); ++i) {
    double quad = 0.0;
    for (int j = 0; j < op.active_size(); ++j) quad += op.matrix.at(i, j);
    // Remove the drift contribution to isolate the quadrature row sum.
    quad -= -p.coeffs.q(0.0) / h;
    if (i + 1 < op.active_size()) quad -= p.coeffs.q(0.0) / h;
    // The deleted bc column holds weight h/2 of the mass.
    CHECK(quad == doctest::Approx(4.0 - h / 2).epsilon(1e-13));
  }
}

TEST_CASE("matvec matches a brute-force double loop") {
  oracles::RandomProblemGen gen(3);
  ProblemSpec p = gen.next();
  Grid g = build_grid(p.domain, 7);
  DiscreteOperator op = assemble(p, g);

  std::vector<double> v(op.active_size());
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (double& x : v) x = dist(rng);

  std::vector<double> got = matvec(op, v);
  std::vector<double> want = oracles::brute_force_matvec(op.matrix, v);
  for (int i = 0; i < op.active_size(); ++i) CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-14));

  // Unit vectors reproduce matrix columns.
  for (int j = 0; j < op.active_size(); ++j) {
    std::vector<double> e(op.active_size(), 0.0);
    e[j] = 1.0;
    std::vector<double> col = matvec(op, e);
    for (int i = 0; i < op.active_size(); ++i) CHECK(col[i] == op.matrix.at(i, j));
  }

  std::vector<double> zeros(op.active_size(), 0.0);
  for (double x : matvec(op, zeros)) CHECK(x == 0.0);

  std::vector<double> wrong(op.active_size() + 1, 0.0);
  CHECK_THROWS_AS(matvec(op, wrong), Error);
}

TEST_CASE("assemble rejects grids outside the domain and sign-flag mismatches") {
  ProblemSpec p = oracles::constant_problem(1.0, 1.0, 1.0, 0.0, Interval(0.0, 1.0));
  CHECK_THROWS_AS(assemble(p, build_grid(Interval(-0.5, 1.0), 11)), Error);

  ProblemSpec flipped = p;
  flipped.coeffs.q_sign = QSign::negative;  // contradicts q == +1
  CHECK_THROWS_AS(assemble(flipped, build_grid(Interval(0.0, 1.0), 11)), Error);
}

TEST_CASE("refinement halves the eigenvalue increment for smooth data") {
  ProblemSpec p = oracles::constant_problem(1.0, 0.4, 0.7, 0.1, Interval(0.0, 1.0));
  SolverConfig cfg{.tol_bracket = 1e-10};
  std::vector<double> lambdas;
  for (int n : {51, 101, 201, 401}) lambdas.push_back(solve_principal(p, n, cfg).pair.lambda_est);
  for (size_t k = 0; k + 2 < lambdas.size(); ++k) {
    double d1 = std::abs(lambdas[k] - lambdas[k + 1]);
    double d2 = std::abs(lambdas[k + 1] - lambdas[k + 2]);
    CHECK(d2 / d1 > 0.35);
    CHECK(d2 / d1 < 0.7);
  }
}

TEST_CASE("binary dump carries the header and row-major payload") {
  ProblemSpec p = oracles::constant_problem(1.0, 1.0, 1.0, 0.0, Interval(0.0, 1.0));
  Grid g = build_grid(p.domain, 5);
  DiscreteOperator op = assemble(p, g);

  auto path = std::filesystem::temp_directory_path() / "nlpev_dump_test.bin";
  dump_matrix(op, path);

  std::ifstream f(path, std::ios::binary);
  std::int64_t header[3];
  f.read(reinterpret_cast<char*>(header), sizeof(header));
  CHECK(header[0] == op.active_size());
  CHECK(header[1] == 1);
  CHECK(header[2] == 0);
  std::vector<double> payload(op.matrix.data.size());
  f.read(reinterpret_cast<char*>(payload.data()),
         static_cast<std::streamsize>(payload.size() * sizeof(double)));
  CHECK(f.good());
  CHECK(payload == op.matrix.data);
  std::filesystem::remove(path);
}
