#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nlpev/certify.hpp"
#include "nlpev/exhaust.hpp"
#include "nlpev/harnack.hpp"
#include "nlpev/problem.hpp"

namespace nlpev {

/// Minimal structured text: '[name]' section headers, 'key = value' entries,
/// '#' comments. Values are scalars, words, or (nested) bracket lists.
/// Sections repeat and keep file order.
struct TextSection {
  std::string name;
  std::vector<std::pair<std::string, std::string>> entries;

  std::optional<std::string> get(const std::string& key) const;
  std::string require(const std::string& key) const;
  double get_double(const std::string& key, std::optional<double> fallback = std::nullopt) const;
  long get_long(const std::string& key, std::optional<long> fallback = std::nullopt) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  std::vector<double> get_list(const std::string& key) const;
  std::vector<std::pair<double, double>> get_pairs(const std::string& key) const;
  std::vector<std::vector<double>> get_rows(const std::string& key) const;
};

std::vector<TextSection> parse_structured_text(const std::string& text);
std::vector<TextSection> read_structured_text(const std::filesystem::path& path);

/// Accepts "inf" / "-inf" / "+inf" alongside ordinary literals.
double parse_extended_double(const std::string& token);

/// Shortest round-trip formatting, used everywhere output must be byte-stable.
std::string format_double(double v);

// Report and record writers (CSV columns fixed by the external interfaces).
void write_function_csv(const std::filesystem::path& path, const std::vector<double>& x,
                        const std::vector<double>& values);
void write_eigenpair_record(const std::filesystem::path& path, const Eigensolution& solution);
void write_validation_report(const std::filesystem::path& path, const ValidationReport& report);
void write_trace_csv(const std::filesystem::path& path, const ExhaustionTrace& trace);
void write_property_csv(const std::filesystem::path& path, const std::vector<PropertyReport>& reports);
void write_harnack_csv(const std::filesystem::path& path, const HarnackReport& report);

}  // namespace nlpev
