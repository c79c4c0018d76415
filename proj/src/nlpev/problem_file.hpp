#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "nlpev/certify.hpp"
#include "nlpev/kpp.hpp"
#include "nlpev/problem.hpp"
#include "nlpev/textio.hpp"

namespace nlpev {

Coefficient make_coefficient(const TextSection& section, const std::string& prefix);
KernelSpec make_kernel_spec(const TextSection& section);

ProblemSpec parse_problem(const std::string& text);
ProblemSpec load_problem(const std::filesystem::path& path);

KppSpec parse_kpp(const std::string& text);
KppSpec load_kpp(const std::filesystem::path& path);

/// One batch property check parsed from a [check] section.
struct CheckSpec {
  std::string kind;  // domain-monotone | a-compare | lower-bound | j-monotone | dual-gap | exp-bound
  TextSection raw;
};

std::vector<CheckSpec> parse_checks(const std::string& text);
std::vector<CheckSpec> load_checks(const std::filesystem::path& path);

/// Runs the batch against a problem; one report row per inequality checked.
std::vector<PropertyReport> run_checks(const ProblemSpec& problem, const std::vector<CheckSpec>& checks,
                                       const SolverConfig& cfg);

}  // namespace nlpev
