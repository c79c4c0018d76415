#include "nlpev.h"

#include <cstring>
#include <fstream>
#include <string>
#include <variant>
#include <vector>

#include "nlpev/certify.hpp"
#include "nlpev/errors.hpp"
#include "nlpev/exhaust.hpp"
#include "nlpev/harnack.hpp"
#include "nlpev/kpp.hpp"
#include "nlpev/problem_file.hpp"
#include "nlpev/textio.hpp"

using nlpev::Error;
using nlpev::ErrorKind;

struct nlpev_problem {
  nlpev::ProblemSpec spec;
};

struct nlpev_solution {
  nlpev::Eigensolution sol;
};

struct nlpev_trace {
  nlpev::ExhaustionTrace trace;
};

struct nlpev_kpp {
  nlpev::KppSpec spec;
};

// One report row; validation items carry no numbers, property rows do.
struct nlpev_report_row {
  std::string id;
  bool pass = true;
  bool warning = false;
  std::string detail;
  double lhs = 0.0, rhs = 0.0, tolerance = 0.0;
  bool has_values = false;
};

struct nlpev_report {
  std::vector<nlpev_report_row> rows;
  std::variant<std::monostate, nlpev::ValidationReport, std::vector<nlpev::PropertyReport>> source;
};

namespace {

thread_local std::string g_last_error;

nlpev_status status_of(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::argument: return NLPEV_ERR_ARGUMENT;
    case ErrorKind::parse: return NLPEV_ERR_PARSE;
    case ErrorKind::io: return NLPEV_ERR_IO;
    case ErrorKind::validation: return NLPEV_ERR_VALIDATION;
    case ErrorKind::geometry: return NLPEV_ERR_GEOMETRY;
    case ErrorKind::shape: return NLPEV_ERR_SHAPE;
    case ErrorKind::positivity: return NLPEV_ERR_POSITIVITY;
    case ErrorKind::structure: return NLPEV_ERR_STRUCTURE;
    case ErrorKind::nonconvergence: return NLPEV_ERR_NONCONVERGENCE;
    case ErrorKind::unsupported: return NLPEV_ERR_UNSUPPORTED;
    case ErrorKind::internal: return NLPEV_ERR_INTERNAL;
  }
  return NLPEV_ERR_INTERNAL;
}

template <typename Fn>
nlpev_status guarded(Fn&& fn) {
  try {
    fn();
    return NLPEV_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_of(e.kind());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return NLPEV_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return NLPEV_ERR_INTERNAL;
  }
}

nlpev_status require(bool ok, const char* message) {
  if (ok) return NLPEV_OK;
  g_last_error = message;
  return NLPEV_ERR_ARGUMENT;
}

nlpev::SolverConfig to_config(const nlpev_solver_options* options) {
  nlpev::SolverConfig cfg;
  if (!options) return cfg;
  cfg.tol_bracket = options->tol_bracket;
  cfg.max_iters = options->max_iters;
  cfg.seed_vector = options->seed_mode == 1 ? nlpev::SeedVector::random_positive : nlpev::SeedVector::ones;
  cfg.seed = options->seed;
  switch (options->strategy) {
    case 1: cfg.strategy = nlpev::PerronStrategy::power; break;
    case 2: cfg.strategy = nlpev::PerronStrategy::shift_invert; break;
    default: cfg.strategy = nlpev::PerronStrategy::automatic; break;
  }
  return cfg;
}

nlpev_report* report_from(const nlpev::ValidationReport& vr) {
  auto* r = new nlpev_report;
  for (const auto& item : vr.items)
    r->rows.push_back({item.id, item.pass, item.warning, item.detail, 0, 0, 0, false});
  r->source = vr;
  return r;
}

nlpev_report* report_from(std::vector<nlpev::PropertyReport> prs) {
  auto* r = new nlpev_report;
  for (const auto& p : prs)
    r->rows.push_back({nlpev::property_id_name(p.id), p.pass, false, p.context, p.lhs, p.rhs,
                       p.tolerance, true});
  r->source = std::move(prs);
  return r;
}

}  // namespace

extern "C" {

const char* nlpev_version(void) { return "0.1.0"; }

const char* nlpev_status_name(nlpev_status status) {
  switch (status) {
    case NLPEV_OK: return "ok";
    case NLPEV_ERR_ARGUMENT: return "argument";
    case NLPEV_ERR_PARSE: return "parse";
    case NLPEV_ERR_IO: return "io";
    case NLPEV_ERR_VALIDATION: return "validation";
    case NLPEV_ERR_GEOMETRY: return "geometry";
    case NLPEV_ERR_SHAPE: return "shape";
    case NLPEV_ERR_POSITIVITY: return "positivity";
    case NLPEV_ERR_STRUCTURE: return "structure";
    case NLPEV_ERR_NONCONVERGENCE: return "nonconvergence";
    case NLPEV_ERR_UNSUPPORTED: return "unsupported";
    case NLPEV_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* nlpev_last_error(void) { return g_last_error.c_str(); }

nlpev_status nlpev_problem_open(const char* path, nlpev_problem** out) {
  if (auto s = require(path && out, "path and out must be non-null")) return s;
  return guarded([&] { *out = new nlpev_problem{nlpev::load_problem(path)}; });
}

nlpev_status nlpev_problem_parse(const char* text, nlpev_problem** out) {
  if (auto s = require(text && out, "text and out must be non-null")) return s;
  return guarded([&] { *out = new nlpev_problem{nlpev::parse_problem(text)}; });
}

void nlpev_problem_close(nlpev_problem* problem) { delete problem; }

nlpev_status nlpev_problem_domain(const nlpev_problem* problem, double* lower, double* upper) {
  if (auto s = require(problem != nullptr, "problem must be non-null")) return s;
  if (lower) *lower = problem->spec.domain.lower;
  if (upper) *upper = problem->spec.domain.upper;
  return NLPEV_OK;
}

nlpev_status nlpev_problem_reflect(const nlpev_problem* problem, nlpev_problem** out) {
  if (auto s = require(problem && out, "problem and out must be non-null")) return s;
  return guarded([&] { *out = new nlpev_problem{nlpev::reflect(problem->spec)}; });
}

int32_t nlpev_report_rows(const nlpev_report* report) {
  return report ? static_cast<int32_t>(report->rows.size()) : 0;
}

int32_t nlpev_report_passed(const nlpev_report* report) {
  if (!report) return 0;
  for (const auto& row : report->rows)
    if (!row.pass && !row.warning) return 0;
  return 1;
}

const char* nlpev_report_id(const nlpev_report* report, int32_t row) {
  if (!report || row < 0 || row >= static_cast<int32_t>(report->rows.size())) return "";
  return report->rows[row].id.c_str();
}

int32_t nlpev_report_pass(const nlpev_report* report, int32_t row) {
  if (!report || row < 0 || row >= static_cast<int32_t>(report->rows.size())) return 0;
  return report->rows[row].pass ? 1 : 0;
}

int32_t nlpev_report_warning(const nlpev_report* report, int32_t row) {
  if (!report || row < 0 || row >= static_cast<int32_t>(report->rows.size())) return 0;
  return report->rows[row].warning ? 1 : 0;
}

const char* nlpev_report_detail(const nlpev_report* report, int32_t row) {
  if (!report || row < 0 || row >= static_cast<int32_t>(report->rows.size())) return "";
  return report->rows[row].detail.c_str();
}

nlpev_status nlpev_report_values(const nlpev_report* report, int32_t row, double* lhs, double* rhs,
                                 double* tolerance) {
  if (auto s = require(report && row >= 0 && row < static_cast<int32_t>(report->rows.size()),
                       "row out of range"))
    return s;
  const auto& r = report->rows[row];
  if (lhs) *lhs = r.lhs;
  if (rhs) *rhs = r.rhs;
  if (tolerance) *tolerance = r.tolerance;
  return NLPEV_OK;
}

nlpev_status nlpev_report_write_csv(const nlpev_report* report, const char* path) {
  if (auto s = require(report && path, "report and path must be non-null")) return s;
  return guarded([&] {
    if (auto* props = std::get_if<std::vector<nlpev::PropertyReport>>(&report->source)) {
      nlpev::write_property_csv(path, *props);
    } else if (auto* vr = std::get_if<nlpev::ValidationReport>(&report->source)) {
      nlpev::write_validation_report(path, *vr);
    } else {
      throw Error(ErrorKind::argument, "report has no writable source");
    }
  });
}

void nlpev_report_close(nlpev_report* report) { delete report; }

nlpev_status nlpev_validate(const nlpev_problem* problem, int32_t mesh_size, nlpev_report** out) {
  if (auto s = require(problem && out, "problem and out must be non-null")) return s;
  return guarded([&] { *out = report_from(nlpev::validate(problem->spec, mesh_size)); });
}

nlpev_status nlpev_validation_write(const nlpev_problem* problem, int32_t mesh_size, const char* path) {
  if (auto s = require(problem && path, "problem and path must be non-null")) return s;
  return guarded([&] { nlpev::write_validation_report(path, nlpev::validate(problem->spec, mesh_size)); });
}

void nlpev_solver_options_init(nlpev_solver_options* options) {
  if (!options) return;
  nlpev::SolverConfig defaults;
  options->tol_bracket = defaults.tol_bracket;
  options->max_iters = defaults.max_iters;
  options->seed_mode = 0;
  options->seed = defaults.seed;
  options->strategy = 0;
}

nlpev_status nlpev_solve(const nlpev_problem* problem, int32_t n, const nlpev_solver_options* options,
                         nlpev_solution** out) {
  if (auto s = require(problem && out, "problem and out must be non-null")) return s;
  return guarded(
      [&] { *out = new nlpev_solution{nlpev::solve_principal(problem->spec, n, to_config(options))}; });
}

nlpev_status nlpev_solve_reflected(const nlpev_problem* problem, int32_t n,
                                   const nlpev_solver_options* options, nlpev_solution** out) {
  if (auto s = require(problem && out, "problem and out must be non-null")) return s;
  return guarded(
      [&] { *out = new nlpev_solution{nlpev::solve_via_reflection(problem->spec, n, to_config(options))}; });
}

nlpev_status nlpev_solution_lambda(const nlpev_solution* solution, double* est, double* lo, double* hi) {
  if (auto s = require(solution != nullptr, "solution must be non-null")) return s;
  if (est) *est = solution->sol.pair.lambda_est;
  if (lo) *lo = solution->sol.pair.lambda_lo;
  if (hi) *hi = solution->sol.pair.lambda_hi;
  return NLPEV_OK;
}

nlpev_status nlpev_solution_stats(const nlpev_solution* solution, int64_t* iterations, double* residual,
                                  int32_t* n, int32_t* bc_side) {
  if (auto s = require(solution != nullptr, "solution must be non-null")) return s;
  if (iterations) *iterations = solution->sol.pair.iterations;
  if (residual) *residual = solution->sol.pair.residual;
  if (n) *n = solution->sol.grid.n;
  if (bc_side) *bc_side = solution->sol.bc_side;
  return NLPEV_OK;
}

int32_t nlpev_solution_size(const nlpev_solution* solution) {
  return solution ? solution->sol.grid.n : 0;
}

nlpev_status nlpev_solution_copy(const nlpev_solution* solution, double* x, double* phi) {
  if (auto s = require(solution != nullptr, "solution must be non-null")) return s;
  const auto& sol = solution->sol;
  if (x) std::memcpy(x, sol.grid.nodes.data(), sol.grid.nodes.size() * sizeof(double));
  if (phi) std::memcpy(phi, sol.phi.data(), sol.phi.size() * sizeof(double));
  return NLPEV_OK;
}

nlpev_status nlpev_solution_write_record(const nlpev_solution* solution, const char* path) {
  if (auto s = require(solution && path, "solution and path must be non-null")) return s;
  return guarded([&] { nlpev::write_eigenpair_record(path, solution->sol); });
}

nlpev_status nlpev_solution_write_csv(const nlpev_solution* solution, const char* path) {
  if (auto s = require(solution && path, "solution and path must be non-null")) return s;
  return guarded([&] { nlpev::write_function_csv(path, solution->sol.grid.nodes, solution->sol.phi); });
}

void nlpev_solution_close(nlpev_solution* solution) { delete solution; }

nlpev_status nlpev_dump_operator(const nlpev_problem* problem, int32_t n, const char* path) {
  if (auto s = require(problem && path, "problem and path must be non-null")) return s;
  return guarded([&] {
    nlpev::Grid grid = nlpev::build_grid(problem->spec.domain, n);
    nlpev::dump_matrix(nlpev::assemble(problem->spec, grid), path);
  });
}

nlpev_status nlpev_exhaust(const nlpev_problem* problem, double r0, double growth, int32_t count,
                           double h_target, double gap_tol, const nlpev_solver_options* options,
                           nlpev_trace** out) {
  if (auto s = require(problem && out, "problem and out must be non-null")) return s;
  return guarded([&] {
    auto family = nlpev::truncation_family(problem->spec.domain, r0, growth, count);
    *out = new nlpev_trace{
        nlpev::run_exhaustion(problem->spec, family, h_target, to_config(options), gap_tol)};
  });
}

int32_t nlpev_trace_length(const nlpev_trace* trace) {
  return trace ? static_cast<int32_t>(trace->trace.lambdas.size()) : 0;
}

nlpev_status nlpev_trace_entry(const nlpev_trace* trace, int32_t k, double* radius, int32_t* n,
                               double* lo, double* est, double* hi) {
  if (auto s = require(trace && k >= 0 && k < nlpev_trace_length(trace), "trace entry out of range"))
    return s;
  const auto& t = trace->trace;
  if (radius) *radius = t.radii[k];
  if (n) *n = t.ns[k];
  if (lo) *lo = t.brackets[k].lo;
  if (est) *est = t.lambdas[k];
  if (hi) *hi = t.brackets[k].hi;
  return NLPEV_OK;
}

nlpev_status nlpev_trace_result(const nlpev_trace* trace, int32_t* converged, double* lambda_limit,
                                double* last_gap) {
  if (auto s = require(trace != nullptr, "trace must be non-null")) return s;
  if (converged) *converged = trace->trace.converged ? 1 : 0;
  if (lambda_limit) *lambda_limit = trace->trace.lambda_limit;
  if (last_gap) *last_gap = trace->trace.last_gap;
  return NLPEV_OK;
}

nlpev_status nlpev_trace_write_csv(const nlpev_trace* trace, const char* path) {
  if (auto s = require(trace && path, "trace and path must be non-null")) return s;
  return guarded([&] { nlpev::write_trace_csv(path, trace->trace); });
}

nlpev_status nlpev_trace_write_snapshot_csv(const nlpev_trace* trace, const char* path) {
  if (auto s = require(trace && path, "trace and path must be non-null")) return s;
  return guarded(
      [&] { nlpev::write_function_csv(path, trace->trace.snapshot_x, trace->trace.snapshot_phi); });
}

void nlpev_trace_close(nlpev_trace* trace) { delete trace; }

nlpev_status nlpev_harnack(const nlpev_problem* problem, int32_t n, double r1, double r2, double eps,
                           const nlpev_solver_options* options, nlpev_harnack_result* out) {
  if (auto s = require(problem && out, "problem and out must be non-null")) return s;
  return guarded([&] {
    nlpev::Eigensolution sol = nlpev::solve_principal(problem->spec, n, to_config(options));
    nlpev::HarnackReport report = nlpev::verify(problem->spec, sol, r1, r2, eps);
    const auto& c = report.constants;
    *out = nlpev_harnack_result{c.eps,    c.d,      c.delta,  c.kappa_tilde0,
                                c.c1,     c.n_chain, c.log_c3, c.log_c2,
                                c.log_c0, c.log_c,  report.empirical_ratio,
                                report.pass ? 1 : 0, report.wtilde_monotone ? 1 : 0,
                                report.wtilde_max_violation};
  });
}

nlpev_status nlpev_harnack_write_csv(const nlpev_harnack_result* result, double r1, double r2,
                                     const char* path) {
  if (auto s = require(result && path, "result and path must be non-null")) return s;
  return guarded([&] {
    nlpev::HarnackReport report;
    report.r1 = r1;
    report.r2 = r2;
    report.constants.eps = result->eps;
    report.constants.delta = result->delta;
    report.constants.n_chain = result->n_chain;
    report.constants.log_c = result->log_c;
    report.empirical_ratio = result->empirical_ratio;
    report.pass = result->pass != 0;
    nlpev::write_harnack_csv(path, report);
  });
}

nlpev_status nlpev_certify_file(const nlpev_problem* problem, const char* checks_path,
                                const nlpev_solver_options* options, nlpev_report** out) {
  if (auto s = require(problem && checks_path && out, "problem, checks_path and out must be non-null"))
    return s;
  return guarded([&] {
    auto checks = nlpev::load_checks(checks_path);
    *out = report_from(nlpev::run_checks(problem->spec, checks, to_config(options)));
  });
}

nlpev_status nlpev_kpp_open(const char* path, nlpev_kpp** out) {
  if (auto s = require(path && out, "path and out must be non-null")) return s;
  return guarded([&] { *out = new nlpev_kpp{nlpev::load_kpp(path)}; });
}

nlpev_status nlpev_kpp_parse(const char* text, nlpev_kpp** out) {
  if (auto s = require(text && out, "text and out must be non-null")) return s;
  return guarded([&] { *out = new nlpev_kpp{nlpev::parse_kpp(text)}; });
}

void nlpev_kpp_close(nlpev_kpp* spec) { delete spec; }

nlpev_status nlpev_kpp_validate(const nlpev_kpp* spec, int32_t mesh_size, nlpev_report** out) {
  if (auto s = require(spec && out, "spec and out must be non-null")) return s;
  return guarded([&] { *out = report_from(nlpev::validate_kpp(spec->spec, mesh_size)); });
}

nlpev_status nlpev_kpp_simulate(const nlpev_kpp* spec, double c, double h, double dt, double t_end,
                                const nlpev_solver_options* options, const char* field_dump_path,
                                int32_t dump_every, nlpev_kpp_verdict* out) {
  if (auto s = require(spec && out, "spec and out must be non-null")) return s;
  return guarded([&] {
    nlpev::KppSpec run_spec = spec->spec;
    if (c > 0) run_spec.speed_c = c;

    nlpev::SimOptions sim;
    sim.h = h;
    sim.dt = dt;
    sim.t_end = t_end;
    sim.solver = to_config(options);

    std::ofstream dump;
    if (field_dump_path && dump_every > 0) {
      dump.open(field_dump_path);
      if (!dump) throw Error(ErrorKind::io, std::string("cannot open ") + field_dump_path);
      dump << "t,x,v\n";
      sim.frame_every = dump_every;
      sim.frame_sink = [&dump](double t, std::span<const double> x, std::span<const double> v) {
        for (size_t i = 0; i < x.size(); ++i)
          dump << nlpev::format_double(t) << "," << nlpev::format_double(x[i]) << ","
               << nlpev::format_double(v[i]) << "\n";
      };
    }

    nlpev::SimResult result = nlpev::simulate(run_spec, sim);
    *out = nlpev_kpp_verdict{result.verdict.lambda_lin,
                             result.verdict.predicted_persist ? 1 : 0,
                             result.verdict.simulated_mass,
                             result.verdict.agree ? 1 : 0,
                             result.verdict.mass_tol,
                             result.edge_mass_deficit,
                             result.steps};
  });
}

}  // extern "C"
