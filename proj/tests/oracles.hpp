// Test-side oracles, independent of the solver paths they check.
#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <random>

#include "nlpev/discretize.hpp"
#include "nlpev/problem.hpp"

namespace oracles {

// Perron value of a Metzler matrix (eigenvalue of maximal real part) from a
// full dense eigendecomposition.
inline double perron_value(const nlpev::DenseMatrix& a) {
  Eigen::MatrixXd m(a.n, a.n);
  for (int i = 0; i < a.n; ++i)
    for (int j = 0; j < a.n; ++j) m(i, j) = a.at(i, j);
  Eigen::EigenSolver<Eigen::MatrixXd> solver(m, /*computeEigenvectors=*/false);
  double best = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < a.n; ++i) best = std::max(best, solver.eigenvalues()[i].real());
  return best;
}

// Entry-by-entry matrix-vector product, written as naively as possible.
inline std::vector<double> brute_force_matvec(const nlpev::DenseMatrix& a,
                                              const std::vector<double>& v) {
  std::vector<double> out(a.n, 0.0);
  for (int i = 0; i < a.n; ++i)
    for (int j = 0; j < a.n; ++j) out[i] += a.at(i, j) * v[j];
  return out;
}

// Constant-coefficient problem with a truly constant kernel; the declared
// horizon must reach past the domain diameter for the certificate to hold.
inline nlpev::ProblemSpec constant_problem(double kappa, double reach, double q, double a,
                                           nlpev::Interval domain = nlpev::Interval(0.0, 1.0)) {
  using namespace nlpev;
  return ProblemSpec{
      domain,
      KernelSpec{Kernel::custom([kappa](double, double) { return kappa; }, "constant"), kappa, kappa,
                 reach, reach},
      CoefficientSpec{Coefficient::constant(q), Coefficient::constant(a), std::abs(q),
                      q > 0 ? QSign::positive : QSign::negative, std::abs(q), std::abs(a)},
  };
}

// Randomized validated bounded problems with q of constant sign and a banded
// kernel wide enough for the irreducibility check at the given resolution.
struct RandomProblemGen {
  std::mt19937_64 rng;

  explicit RandomProblemGen(std::uint64_t seed) : rng(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  }

  nlpev::ProblemSpec next(bool negative_q = false, bool affine_q = false) {
    using namespace nlpev;
    double lo = uniform(-1.0, 0.0);
    double hi = lo + uniform(0.8, 2.0);
    double kappa = uniform(0.3, 2.0);
    double halfwidth = uniform(0.3, 1.2) * (hi - lo);

    double q0 = uniform(0.25, 1.5);
    double q1 = affine_q ? uniform(-0.15, 0.15) * q0 : 0.0;
    double reach = std::max(std::abs(lo), std::abs(hi));
    double qmin = q0 - std::abs(q1) * reach;  // positive by construction
    Coefficient q = Coefficient::affine(q0, q1);
    if (negative_q) q = Coefficient::affine(-q0, -q1);

    double a0 = uniform(-1.0, 1.0);
    double a1 = uniform(-0.5, 0.5);
    Coefficient a = Coefficient::affine(a0, a1);
    double a_sup = std::abs(a0) + std::abs(a1) * reach;

    return ProblemSpec{
        Interval(lo, hi),
        KernelSpec{Kernel::constant_band(kappa, halfwidth), kappa, kappa, halfwidth, halfwidth},
        CoefficientSpec{q, a, qmin * 0.999, negative_q ? QSign::negative : QSign::positive,
                        q0 + std::abs(q1) * reach, a_sup + 1e-9},
    };
  }
};

}  // namespace oracles
