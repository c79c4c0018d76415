#include "nlpev/problem.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nlpev/errors.hpp"

namespace nlpev {

namespace {

std::string at_point(double x) {
  std::ostringstream os;
  os << "x = " << x;
  return os.str();
}

std::string at_pair(double x, double y) {
  std::ostringstream os;
  os << "(x, y) = (" << x << ", " << y << ")";
  return os.str();
}

std::pair<double, double> sampling_window(const ProblemSpec& p) {
  return default_sampling_window(p.domain, p.kernel.delta1);
}

}  // namespace

std::pair<double, double> default_sampling_window(const Interval& domain, double delta1) {
  double reach = 8.0 * std::max(1.0, delta1);
  double lo = domain.lower, hi = domain.upper;
  if (!std::isfinite(lo)) lo = (std::isfinite(hi) ? hi : 0.0) - 2.0 * reach;
  if (!std::isfinite(hi)) hi = (std::isfinite(domain.lower) ? domain.lower : 0.0) + 2.0 * reach;
  return {lo, hi};
}

ProblemSpec ProblemSpec::with_domain(const Interval& d) const {
  ProblemSpec out = *this;
  out.domain = d;
  return out;
}

ProblemSpec ProblemSpec::with_a(const Coefficient& a) const {
  ProblemSpec out = *this;
  out.coeffs.a = a;
  auto [lo, hi] = sampling_window(out);
  double sup = 0.0;
  const int m = 256;
  for (int i = 0; i < m; ++i) sup = std::max(sup, std::abs(a(lo + (hi - lo) * i / (m - 1))));
  out.coeffs.a_sup = sup * 1.0000001 + 1e-300;
  return out;
}

ProblemSpec ProblemSpec::with_kernel(const KernelSpec& k) const {
  ProblemSpec out = *this;
  out.kernel = k;
  return out;
}

SampledFunction make_sampled(const Grid& grid, const Coefficient& f) {
  SampledFunction s{grid, {}};
  s.values.reserve(grid.n);
  for (double x : grid.nodes) s.values.push_back(f(x));
  return s;
}

ValidationReport validate(const ProblemSpec& problem, int mesh_size) {
  if (mesh_size < 2) throw Error(ErrorKind::argument, "validation mesh needs at least 2 points");

  ValidationReport report;
  report.mesh_size = mesh_size;
  auto [wlo, whi] = sampling_window(problem);
  report.window_lower = wlo;
  report.window_upper = whi;

  // Cell-centered samples: the assumptions quantify over the open domain, so
  // closure-only pairs (e.g. |x - y| equal to the domain diameter) stay out.
  std::vector<double> mesh(mesh_size);
  for (int i = 0; i < mesh_size; ++i) mesh[i] = wlo + (whi - wlo) * (i + 0.5) / mesh_size;

  const auto& ks = problem.kernel;
  const auto& cs = problem.coeffs;

  {
    ValidationItem it{.id = "A2-order"};
    if (!(ks.kappa0 > 0) || !(ks.delta0 > 0)) {
      it.pass = false;
      it.detail = "kappa0 and delta0 must be positive";
    } else if (ks.kappa0 > ks.kappa1 || ks.delta0 > ks.delta1) {
      it.pass = false;
      it.detail = "require kappa0 <= kappa1 and delta0 <= delta1";
    } else {
      it.detail = "certificate constants ordered";
    }
    report.items.push_back(std::move(it));
  }

  {
    ValidationItem nonneg{.id = "A1-nonneg", .detail = "J nonnegative and finite on the mesh"};
    ValidationItem lower{.id = "A2-lower", .detail = "J >= kappa0 on the delta0 band"};
    ValidationItem upper{.id = "A2-upper", .detail = "J <= kappa1 on the delta1 band and 0 beyond it"};
    for (double x : mesh) {
      for (double y : mesh) {
        double v = ks.j(x, y);
        if (nonneg.pass && (!std::isfinite(v) || v < 0)) {
          nonneg.pass = false;
          nonneg.detail = "J negative or non-finite at " + at_pair(x, y);
          nonneg.x = x;
          nonneg.y = y;
        }
        double d = std::abs(x - y);
        if (lower.pass && d < ks.delta0 && v < ks.kappa0 * (1 - 1e-12)) {
          lower.pass = false;
          std::ostringstream os;
          os << "J = " << v << " < kappa0 = " << ks.kappa0 << " at " << at_pair(x, y);
          lower.detail = os.str();
          lower.x = x;
          lower.y = y;
        }
        if (upper.pass) {
          bool bad = d < ks.delta1 ? v > ks.kappa1 * (1 + 1e-12)
                                   : v > 1e-14 * std::max(1.0, ks.kappa1);
          if (bad) {
            upper.pass = false;
            std::ostringstream os;
            if (d < ks.delta1)
              os << "J = " << v << " > kappa1 = " << ks.kappa1 << " at " << at_pair(x, y);
            else
              os << "J = " << v << " nonzero beyond the delta1 horizon at " << at_pair(x, y);
            upper.detail = os.str();
            upper.x = x;
            upper.y = y;
          }
        }
      }
    }
    report.items.push_back(std::move(nonneg));
    report.items.push_back(std::move(lower));
    report.items.push_back(std::move(upper));
  }

  {
    ValidationItem bounds{.id = "A3-bounds", .detail = "|q| and |a| within declared sup-norms"};
    ValidationItem sign{.id = "A3-q-sign", .detail = "q nonzero with the declared constant sign"};
    ValidationItem inf{.id = "A4-inf-q"};
    bool claim_a4 = cs.q_inf_abs > 0;
    if (claim_a4) {
      inf.detail = "|q| >= declared q_inf_abs";
    } else {
      inf.warning = true;
      inf.detail =
          "q_inf_abs = 0: A4 not claimed; bounded-domain equality and exhaustion "
          "guarantees do not apply";
    }
    for (double x : mesh) {
      double qv = cs.q(x), av = cs.a(x);
      if (bounds.pass && (!std::isfinite(qv) || !std::isfinite(av) ||
                          std::abs(qv) > cs.q_sup * (1 + 1e-12) || std::abs(av) > cs.a_sup * (1 + 1e-12))) {
        bounds.pass = false;
        bounds.detail = "coefficient exceeds its declared sup-norm at " + at_point(x);
        bounds.x = x;
      }
      bool good_sign = cs.q_sign == QSign::positive ? qv > 0 : qv < 0;
      if (sign.pass && !good_sign) {
        sign.pass = false;
        sign.detail = "q sign disagrees with declaration at " + at_point(x);
        sign.x = x;
      }
      if (claim_a4 && inf.pass && std::abs(qv) < cs.q_inf_abs * (1 - 1e-12)) {
        inf.pass = false;
        std::ostringstream os;
        os << "|q| = " << std::abs(qv) << " < q_inf_abs = " << cs.q_inf_abs << " at " << at_point(x);
        inf.detail = os.str();
        inf.x = x;
      }
    }
    report.items.push_back(std::move(bounds));
    report.items.push_back(std::move(sign));
    report.items.push_back(std::move(inf));
  }

  return report;
}

SampledFunction apply_operator(const ProblemSpec& problem, const SampledFunction& phi,
                               const SampledFunction& phi_prime) {
  if (!phi.grid.same_layout(phi_prime.grid))
    throw Error(ErrorKind::shape, "phi and phi_prime must share one grid");
  if (phi.values.size() != static_cast<size_t>(phi.grid.n) || phi_prime.values.size() != phi.values.size())
    throw Error(ErrorKind::shape, "sampled values do not match the grid size");
  if (!problem.domain.contains(phi.grid.interval))
    throw Error(ErrorKind::geometry, "grid interval is not contained in the problem domain");

  const Grid& g = phi.grid;
  SampledFunction out{g, std::vector<double>(g.n)};
  for (int i = 0; i < g.n; ++i) {
    double x = g.nodes[i];
    double integral = 0.0;
    for (int j = 0; j < g.n; ++j) integral += problem.kernel.j(x, g.nodes[j]) * g.weights[j] * phi.values[j];
    out.values[i] = problem.coeffs.q(x) * phi_prime.values[i] + integral + problem.coeffs.a(x) * phi.values[i];
  }
  return out;
}

std::pair<double, double> rayleigh_bracket(const ProblemSpec& problem, const SampledFunction& phi,
                                           const SampledFunction& phi_prime) {
  for (double v : phi.values)
    if (!(v > 0)) throw Error(ErrorKind::positivity, "rayleigh_bracket requires phi > 0 at every node");
  SampledFunction applied = apply_operator(problem, phi, phi_prime);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < phi.grid.n; ++i) {
    double r = -applied.values[i] / phi.values[i];
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  return {lo, hi};
}

}  // namespace nlpev
