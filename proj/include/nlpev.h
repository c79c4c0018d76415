/*
 * nlpev — principal eigenvalues of 1-D nonlocal dispersal operators with drift.
 *
 * C API over the solver core: opaque handles, integer status codes, plain
 * getters. Every object returned through an out-parameter is owned by the
 * caller and released with the matching *_close function.
 *
 * Sign convention everywhere: the spectral problem reads
 *     q(x) phi'(x) + int_Omega J(x,y) phi(y) dy + a(x) phi(x) + lambda phi(x) = 0,
 * so lambda is minus the Perron value of the discretized operator. Brackets
 * [lambda_lo, lambda_hi] are certified Collatz-Wielandt bounds.
 */
#ifndef NLPEV_H
#define NLPEV_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef int32_t nlpev_status;

enum {
  NLPEV_OK = 0,
  NLPEV_ERR_ARGUMENT = 1,
  NLPEV_ERR_PARSE = 2,
  NLPEV_ERR_IO = 3,
  NLPEV_ERR_VALIDATION = 4,
  NLPEV_ERR_GEOMETRY = 5,
  NLPEV_ERR_SHAPE = 6,
  NLPEV_ERR_POSITIVITY = 7,
  NLPEV_ERR_STRUCTURE = 8,
  NLPEV_ERR_NONCONVERGENCE = 9,
  NLPEV_ERR_UNSUPPORTED = 10,
  NLPEV_ERR_INTERNAL = 11,
};

const char* nlpev_version(void);
const char* nlpev_status_name(nlpev_status status);
/* Message of the most recent failure on this thread. */
const char* nlpev_last_error(void);

/* ------------------------------------------------------------------ */
/* Problems                                                             */

typedef struct nlpev_problem nlpev_problem;

/* Structured-text problem definition; see the README for the schema. */
nlpev_status nlpev_problem_open(const char* path, nlpev_problem** out);
nlpev_status nlpev_problem_parse(const char* text, nlpev_problem** out);
void nlpev_problem_close(nlpev_problem* problem);
/* Endpoints of the domain; unbounded sides come back as +/-HUGE_VAL. */
nlpev_status nlpev_problem_domain(const nlpev_problem* problem, double* lower, double* upper);
nlpev_status nlpev_problem_reflect(const nlpev_problem* problem, nlpev_problem** out);

/* ------------------------------------------------------------------ */
/* Reports (validation items and property-check rows)                  */

typedef struct nlpev_report nlpev_report;

int32_t nlpev_report_rows(const nlpev_report* report);
/* 1 when every non-warning row passes. */
int32_t nlpev_report_passed(const nlpev_report* report);
const char* nlpev_report_id(const nlpev_report* report, int32_t row);
int32_t nlpev_report_pass(const nlpev_report* report, int32_t row);
int32_t nlpev_report_warning(const nlpev_report* report, int32_t row);
const char* nlpev_report_detail(const nlpev_report* report, int32_t row);
/* lhs/rhs/tolerance of a property row; zeros for validation rows. */
nlpev_status nlpev_report_values(const nlpev_report* report, int32_t row, double* lhs, double* rhs,
                                 double* tolerance);
nlpev_status nlpev_report_write_csv(const nlpev_report* report, const char* path);
void nlpev_report_close(nlpev_report* report);

nlpev_status nlpev_validate(const nlpev_problem* problem, int32_t mesh_size, nlpev_report** out);
nlpev_status nlpev_validation_write(const nlpev_problem* problem, int32_t mesh_size, const char* path);

/* ------------------------------------------------------------------ */
/* Solver                                                               */

typedef struct nlpev_solver_options {
  double tol_bracket;   /* certified bracket width target */
  int64_t max_iters;
  int32_t seed_mode;    /* 0: uniform ones, 1: random positive */
  uint64_t seed;
  int32_t strategy;     /* 0: auto, 1: power iteration, 2: shift-invert */
} nlpev_solver_options;

void nlpev_solver_options_init(nlpev_solver_options* options);

typedef struct nlpev_solution nlpev_solution;

nlpev_status nlpev_solve(const nlpev_problem* problem, int32_t n, const nlpev_solver_options* options,
                         nlpev_solution** out);
nlpev_status nlpev_solve_reflected(const nlpev_problem* problem, int32_t n,
                                   const nlpev_solver_options* options, nlpev_solution** out);
nlpev_status nlpev_solution_lambda(const nlpev_solution* solution, double* est, double* lo, double* hi);
nlpev_status nlpev_solution_stats(const nlpev_solution* solution, int64_t* iterations, double* residual,
                                  int32_t* n, int32_t* bc_side);
int32_t nlpev_solution_size(const nlpev_solution* solution);
/* Copies the full grid and eigenfunction (zero at the boundary node) into
 * caller arrays of nlpev_solution_size() entries; either may be NULL. */
nlpev_status nlpev_solution_copy(const nlpev_solution* solution, double* x, double* phi);
nlpev_status nlpev_solution_write_record(const nlpev_solution* solution, const char* path);
nlpev_status nlpev_solution_write_csv(const nlpev_solution* solution, const char* path);
void nlpev_solution_close(nlpev_solution* solution);

/* Binary dump of the assembled matrix (debug parity interface). */
nlpev_status nlpev_dump_operator(const nlpev_problem* problem, int32_t n, const char* path);

/* ------------------------------------------------------------------ */
/* Growing-domain limit                                                 */

typedef struct nlpev_trace nlpev_trace;

nlpev_status nlpev_exhaust(const nlpev_problem* problem, double r0, double growth, int32_t count,
                           double h_target, double gap_tol, const nlpev_solver_options* options,
                           nlpev_trace** out);
int32_t nlpev_trace_length(const nlpev_trace* trace);
nlpev_status nlpev_trace_entry(const nlpev_trace* trace, int32_t k, double* radius, int32_t* n,
                               double* lo, double* est, double* hi);
nlpev_status nlpev_trace_result(const nlpev_trace* trace, int32_t* converged, double* lambda_limit,
                                double* last_gap);
nlpev_status nlpev_trace_write_csv(const nlpev_trace* trace, const char* path);
nlpev_status nlpev_trace_write_snapshot_csv(const nlpev_trace* trace, const char* path);
void nlpev_trace_close(nlpev_trace* trace);

/* ------------------------------------------------------------------ */
/* Harnack check                                                        */

typedef struct nlpev_harnack_result {
  double eps;
  double d;
  double delta;
  double kappa_tilde0;
  double c1;
  int64_t n_chain;
  double log_c3;
  double log_c2;
  double log_c0;
  double log_c;
  double empirical_ratio;
  int32_t pass;
  int32_t wtilde_monotone;
  double wtilde_max_violation;
} nlpev_harnack_result;

/* Solves at resolution n and verifies max/min <= C on [r1, r2]; eps <= 0
 * selects the canonical default. */
nlpev_status nlpev_harnack(const nlpev_problem* problem, int32_t n, double r1, double r2, double eps,
                           const nlpev_solver_options* options, nlpev_harnack_result* out);
nlpev_status nlpev_harnack_write_csv(const nlpev_harnack_result* result, double r1, double r2,
                                     const char* path);

/* ------------------------------------------------------------------ */
/* Property-check batch                                                 */

nlpev_status nlpev_certify_file(const nlpev_problem* problem, const char* checks_path,
                                const nlpev_solver_options* options, nlpev_report** out);

/* ------------------------------------------------------------------ */
/* KPP application                                                      */

typedef struct nlpev_kpp nlpev_kpp;

nlpev_status nlpev_kpp_open(const char* path, nlpev_kpp** out);
nlpev_status nlpev_kpp_parse(const char* text, nlpev_kpp** out);
void nlpev_kpp_close(nlpev_kpp* spec);
nlpev_status nlpev_kpp_validate(const nlpev_kpp* spec, int32_t mesh_size, nlpev_report** out);

typedef struct nlpev_kpp_verdict {
  double lambda_lin;
  int32_t predicted_persist;
  double simulated_mass;
  int32_t agree;
  double mass_tol;
  double edge_mass_deficit;
  int64_t steps;
} nlpev_kpp_verdict;

/* c <= 0 keeps the speed from the spec file; dt <= 0 selects a stable step.
 * field_dump_path (optional) streams space-time frames every dump_every steps. */
nlpev_status nlpev_kpp_simulate(const nlpev_kpp* spec, double c, double h, double dt, double t_end,
                                const nlpev_solver_options* options, const char* field_dump_path,
                                int32_t dump_every, nlpev_kpp_verdict* out);

#ifdef __cplusplus
}
#endif

#endif /* NLPEV_H */
