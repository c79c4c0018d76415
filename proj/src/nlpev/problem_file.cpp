#include "nlpev/problem_file.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "nlpev/errors.hpp"
#include "nlpev/exhaust.hpp"

namespace nlpev {

namespace {

std::string slurp(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorKind::io, "cannot open " + path.string());
  std::ostringstream buf;
  buf << f.rdbuf();
  return buf.str();
}

const TextSection& find_section(const std::vector<TextSection>& sections, const std::string& name) {
  for (const auto& s : sections)
    if (s.name == name) return s;
  throw Error(ErrorKind::parse, "missing required section [" + name + "]");
}

std::vector<double> require_params(const TextSection& s, const std::string& key, size_t count,
                                   const std::string& kind) {
  auto params = s.get_list(key);
  if (params.size() != count)
    throw Error(ErrorKind::parse, "kind '" + kind + "' expects " + std::to_string(count) +
                                      " parameters in '" + key + "'");
  return params;
}

}  // namespace

Coefficient make_coefficient(const TextSection& section, const std::string& prefix) {
  std::string kind = section.require(prefix + "kind");
  std::string params_key = prefix + "params";
  if (kind == "constant") {
    auto p = require_params(section, params_key, 1, kind);
    return Coefficient::constant(p[0]);
  }
  if (kind == "affine") {
    auto p = require_params(section, params_key, 2, kind);
    return Coefficient::affine(p[0], p[1]);
  }
  if (kind == "indicator-bump") {
    auto p = require_params(section, params_key, 4, kind);
    return Coefficient::indicator_bump(p[0], p[1], p[2], p[3]);
  }
  if (kind == "tent") {
    auto p = require_params(section, params_key, 3, kind);
    return Coefficient::tent(p[0], p[1], p[2]);
  }
  if (kind == "table") {
    return Coefficient::table(section.get_pairs(prefix + "points"));
  }
  throw Error(ErrorKind::parse, "unknown coefficient kind '" + kind + "'");
}

KernelSpec make_kernel_spec(const TextSection& section) {
  std::string kind = section.require("kind");
  Kernel j = Kernel::constant_band(1.0, 1.0);
  if (kind == "constant-band") {
    auto p = require_params(section, "params", 2, kind);
    j = Kernel::constant_band(p[0], p[1]);
  } else if (kind == "tent-band") {
    auto p = require_params(section, "params", 2, kind);
    j = Kernel::tent_band(p[0], p[1]);
  } else if (kind == "table2d") {
    j = Kernel::table2d(section.get_list("xs"), section.get_list("ys"), section.get_rows("values"));
  } else {
    throw Error(ErrorKind::parse, "unknown kernel kind '" + kind + "'");
  }
  return KernelSpec{std::move(j), section.get_double("kappa0"), section.get_double("kappa1"),
                    section.get_double("delta0"), section.get_double("delta1")};
}

ProblemSpec parse_problem(const std::string& text) {
  auto sections = parse_structured_text(text);
  const auto& dom_sec = find_section(sections, "domain");
  Interval domain(dom_sec.get_double("lower"), dom_sec.get_double("upper"));

  KernelSpec kernel = make_kernel_spec(find_section(sections, "kernel"));

  const auto& cs = find_section(sections, "coeffs");
  Coefficient q = make_coefficient(cs, "q_");
  Coefficient a = make_coefficient(cs, "a_");

  auto [wlo, whi] = default_sampling_window(domain, kernel.delta1);
  double q_min = std::numeric_limits<double>::infinity(), q_max = 0.0, a_max = 0.0;
  bool q_pos = true, q_neg = true;
  const int m = 256;
  for (int i = 0; i < m; ++i) {
    double x = wlo + (whi - wlo) * i / (m - 1);
    double qv = q(x);
    q_min = std::min(q_min, std::abs(qv));
    q_max = std::max(q_max, std::abs(qv));
    a_max = std::max(a_max, std::abs(a(x)));
    q_pos = q_pos && qv > 0;
    q_neg = q_neg && qv < 0;
  }

  QSign sign = q_pos ? QSign::positive : QSign::negative;
  if (auto declared = cs.get("q_sign")) {
    if (*declared == "positive") sign = QSign::positive;
    else if (*declared == "negative") sign = QSign::negative;
    else throw Error(ErrorKind::parse, "q_sign must be 'positive' or 'negative'");
  } else if (!q_pos && !q_neg) {
    throw Error(ErrorKind::parse, "sampled q changes sign; declare q_sign explicitly");
  }

  CoefficientSpec coeffs{
      std::move(q),
      std::move(a),
      cs.get_double("q_inf_abs", 0.999 * q_min),
      sign,
      cs.get_double("q_sup", q_max * 1.0000001 + 1e-300),
      cs.get_double("a_sup", a_max * 1.0000001 + 1e-300),
  };
  return ProblemSpec{domain, std::move(kernel), std::move(coeffs)};
}

ProblemSpec load_problem(const std::filesystem::path& path) { return parse_problem(slurp(path)); }

KppSpec parse_kpp(const std::string& text) {
  auto sections = parse_structured_text(text);
  KernelSpec kernel = make_kernel_spec(find_section(sections, "kernel"));
  const auto& ks = find_section(sections, "kpp");
  const auto& gs = find_section(sections, "growth");

  std::string kind = gs.require("kind");
  if (kind != "logistic") throw Error(ErrorKind::parse, "unknown growth kind '" + kind + "'");
  Coefficient lin = make_coefficient(gs, "lin_");
  return KppSpec::logistic(std::move(kernel), ks.get_double("c"), std::move(lin), gs.get_double("b"),
                           ks.get_double("radius"), ks.get_double("carrying"));
}

KppSpec load_kpp(const std::filesystem::path& path) { return parse_kpp(slurp(path)); }

std::vector<CheckSpec> parse_checks(const std::string& text) {
  std::vector<CheckSpec> out;
  for (auto& s : parse_structured_text(text)) {
    if (s.name != "check") throw Error(ErrorKind::parse, "checks file admits only [check] sections");
    CheckSpec cs{s.require("kind"), std::move(s)};
    out.push_back(std::move(cs));
  }
  if (out.empty()) throw Error(ErrorKind::parse, "checks file has no [check] sections");
  return out;
}

std::vector<CheckSpec> load_checks(const std::filesystem::path& path) {
  return parse_checks(slurp(path));
}

std::vector<PropertyReport> run_checks(const ProblemSpec& problem, const std::vector<CheckSpec>& checks,
                                       const SolverConfig& cfg) {
  std::vector<PropertyReport> reports;
  for (const auto& check : checks) {
    const TextSection& s = check.raw;
    int n = static_cast<int>(s.get_long("n", 101));
    if (check.kind == "domain-monotone") {
      auto inner = s.get_list("inner");
      auto outer = s.get_list("outer");
      if (inner.size() != 2 || outer.size() != 2)
        throw Error(ErrorKind::parse, "domain-monotone expects inner = [lo, hi] and outer = [lo, hi]");
      reports.push_back(check_domain_monotone(problem, Interval(inner[0], inner[1]),
                                              Interval(outer[0], outer[1]), n, cfg));
    } else if (check.kind == "a-compare") {
      Coefficient a2 = make_coefficient(s, "a2_");
      auto batch = check_a_monotone_and_lipschitz(problem, problem.coeffs.a, a2, n, cfg);
      reports.insert(reports.end(), batch.begin(), batch.end());
    } else if (check.kind == "lower-bound") {
      reports.push_back(check_lower_bound(problem, n, cfg));
    } else if (check.kind == "j-monotone") {
      TextSection j2_section = s;
      // j2_* keys describe the smaller kernel with the standard schema.
      for (auto& [k, v] : j2_section.entries)
        if (k.rfind("j2_", 0) == 0) k = k.substr(3);
      KernelSpec j2 = make_kernel_spec(j2_section);
      reports.push_back(check_j_monotone(problem, problem.kernel, j2, n, cfg));
    } else if (check.kind == "dual-gap") {
      reports.push_back(check_dual_gap(problem, n, cfg));
    } else if (check.kind == "exp-bound") {
      auto g = s.get_list("gamma");
      if (g.size() != 3) throw Error(ErrorKind::parse, "exp-bound expects gamma = [min, max, count]");
      int count = static_cast<int>(g[2]);
      if (count < 1) throw Error(ErrorKind::parse, "gamma count must be positive");
      std::vector<double> gammas(count);
      for (int i = 0; i < count; ++i)
        gammas[i] = count == 1 ? g[0] : g[0] + (g[1] - g[0]) * i / (count - 1);

      std::vector<double> lambdas;
      double max_width = 0.0;
      if (s.get("r0")) {
        auto family = truncation_family(problem.domain, s.get_double("r0"), s.get_double("growth", 2.0),
                                        static_cast<int>(s.get_long("count", 4)));
        ExhaustionTrace trace =
            run_exhaustion(problem, family, s.get_double("h", 0.05), cfg, s.get_double("gap_tol", 0.0));
        lambdas = trace.lambdas;
        for (const auto& b : trace.brackets) max_width = std::max(max_width, b.hi - b.lo);
      }
      double bound = exp_testfn_lower_bound(problem, gammas);
      reports.push_back(
          exp_testfn_bound(problem, gammas, lambdas, check_tolerance(bound, max_width)));
    } else {
      throw Error(ErrorKind::parse, "unknown check kind '" + check.kind + "'");
    }
  }
  return reports;
}

}  // namespace nlpev
