#include "nlpev/textio.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "nlpev/errors.hpp"

namespace nlpev {

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// Splits a bracket list "[a, b, [c, d]]" into its top-level elements.
std::vector<std::string> split_list(const std::string& value) {
  std::string body = trim(value);
  if (body.size() < 2 || body.front() != '[' || body.back() != ']')
    throw Error(ErrorKind::parse, "expected a bracket list, got '" + value + "'");
  body = body.substr(1, body.size() - 2);
  std::vector<std::string> out;
  int depth = 0;
  std::string current;
  for (char c : body) {
    if (c == '[') ++depth;
    if (c == ']') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(trim(current));
      current.clear();
    } else {
      current += c;
    }
  }
  if (!trim(current).empty()) out.push_back(trim(current));
  return out;
}

}  // namespace

double parse_extended_double(const std::string& token) {
  std::string t = trim(token);
  if (t == "inf" || t == "+inf") return std::numeric_limits<double>::infinity();
  if (t == "-inf") return -std::numeric_limits<double>::infinity();
  try {
    size_t pos = 0;
    double v = std::stod(t, &pos);
    if (pos != t.size()) throw Error(ErrorKind::parse, "trailing characters in number '" + t + "'");
    return v;
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    throw Error(ErrorKind::parse, "not a number: '" + t + "'");
  }
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::optional<std::string> TextSection::get(const std::string& key) const {
  for (const auto& [k, v] : entries)
    if (k == key) return v;
  return std::nullopt;
}

std::string TextSection::require(const std::string& key) const {
  auto v = get(key);
  if (!v) throw Error(ErrorKind::parse, "section [" + name + "] is missing key '" + key + "'");
  return *v;
}

double TextSection::get_double(const std::string& key, std::optional<double> fallback) const {
  auto v = get(key);
  if (!v) {
    if (fallback) return *fallback;
    throw Error(ErrorKind::parse, "section [" + name + "] is missing key '" + key + "'");
  }
  return parse_extended_double(*v);
}

long TextSection::get_long(const std::string& key, std::optional<long> fallback) const {
  auto v = get(key);
  if (!v) {
    if (fallback) return *fallback;
    throw Error(ErrorKind::parse, "section [" + name + "] is missing key '" + key + "'");
  }
  double d = parse_extended_double(*v);
  long l = static_cast<long>(d);
  if (static_cast<double>(l) != d)
    throw Error(ErrorKind::parse, "key '" + key + "' must be an integer");
  return l;
}

std::string TextSection::get_string(const std::string& key, const std::string& fallback) const {
  auto v = get(key);
  return v ? *v : fallback;
}

std::vector<double> TextSection::get_list(const std::string& key) const {
  std::vector<double> out;
  for (const auto& tok : split_list(require(key))) out.push_back(parse_extended_double(tok));
  return out;
}

std::vector<std::pair<double, double>> TextSection::get_pairs(const std::string& key) const {
  std::vector<std::pair<double, double>> out;
  for (const auto& tok : split_list(require(key))) {
    auto pair = split_list(tok);
    if (pair.size() != 2) throw Error(ErrorKind::parse, "key '" + key + "' expects [x, value] pairs");
    out.emplace_back(parse_extended_double(pair[0]), parse_extended_double(pair[1]));
  }
  return out;
}

std::vector<std::vector<double>> TextSection::get_rows(const std::string& key) const {
  std::vector<std::vector<double>> out;
  for (const auto& tok : split_list(require(key))) {
    std::vector<double> row;
    for (const auto& cell : split_list(tok)) row.push_back(parse_extended_double(cell));
    out.push_back(std::move(row));
  }
  return out;
}

std::vector<TextSection> parse_structured_text(const std::string& text) {
  std::vector<TextSection> sections;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[' && line.back() == ']') {
      sections.push_back(TextSection{trim(line.substr(1, line.size() - 2)), {}});
      continue;
    }
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorKind::parse, "line " + std::to_string(lineno) + ": expected 'key = value'");
    if (sections.empty())
      throw Error(ErrorKind::parse, "line " + std::to_string(lineno) + ": entry before any [section]");
    sections.back().entries.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return sections;
}

std::vector<TextSection> read_structured_text(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorKind::io, "cannot open " + path.string());
  std::ostringstream buf;
  buf << f.rdbuf();
  return parse_structured_text(buf.str());
}

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream f(path);
  if (!f) throw Error(ErrorKind::io, "cannot open " + path.string() + " for writing");
  return f;
}

}  // namespace

void write_function_csv(const std::filesystem::path& path, const std::vector<double>& x,
                        const std::vector<double>& values) {
  if (x.size() != values.size()) throw Error(ErrorKind::shape, "column length mismatch");
  auto f = open_out(path);
  f << "x,phi\n";
  for (size_t i = 0; i < x.size(); ++i) f << format_double(x[i]) << "," << format_double(values[i]) << "\n";
}

void write_eigenpair_record(const std::filesystem::path& path, const Eigensolution& solution) {
  auto f = open_out(path);
  f << "[eigenpair]\n";
  f << "# sign convention: M[phi] + a phi + lambda phi = 0\n";
  f << "lambda_est = " << format_double(solution.pair.lambda_est) << "\n";
  f << "lambda_lo = " << format_double(solution.pair.lambda_lo) << "\n";
  f << "lambda_hi = " << format_double(solution.pair.lambda_hi) << "\n";
  f << "iterations = " << solution.pair.iterations << "\n";
  f << "residual = " << format_double(solution.pair.residual) << "\n";
  f << "n = " << solution.grid.n << "\n";
  f << "bc_side = " << solution.bc_side << "\n";
}

void write_validation_report(const std::filesystem::path& path, const ValidationReport& report) {
  auto f = open_out(path);
  f << "[validation]\n";
  f << "mesh = " << report.mesh_size << "\n";
  f << "window_lower = " << format_double(report.window_lower) << "\n";
  f << "window_upper = " << format_double(report.window_upper) << "\n";
  f << "passed = " << (report.passed() ? 1 : 0) << "\n";
  for (const auto& item : report.items) {
    f << "\n[" << (item.warning ? "warning" : "check") << "]\n";
    f << "id = " << item.id << "\n";
    f << "pass = " << (item.pass ? 1 : 0) << "\n";
    f << "detail = " << item.detail << "\n";
    if (item.x) f << "at_x = " << format_double(*item.x) << "\n";
    if (item.y) f << "at_y = " << format_double(*item.y) << "\n";
  }
}

void write_trace_csv(const std::filesystem::path& path, const ExhaustionTrace& trace) {
  auto f = open_out(path);
  f << "radius,n,lambda_lo,lambda_est,lambda_hi\n";
  for (size_t k = 0; k < trace.lambdas.size(); ++k) {
    f << format_double(trace.radii[k]) << "," << trace.ns[k] << ","
      << format_double(trace.brackets[k].lo) << "," << format_double(trace.lambdas[k]) << ","
      << format_double(trace.brackets[k].hi) << "\n";
  }
}

void write_property_csv(const std::filesystem::path& path, const std::vector<PropertyReport>& reports) {
  auto f = open_out(path);
  f << "property_id,pass,lhs,rhs,tolerance\n";
  for (const auto& r : reports) {
    f << property_id_name(r.id) << "," << (r.pass ? 1 : 0) << "," << format_double(r.lhs) << ","
      << format_double(r.rhs) << "," << format_double(r.tolerance) << "\n";
  }
}

void write_harnack_csv(const std::filesystem::path& path, const HarnackReport& report) {
  auto f = open_out(path);
  f << "r1,r2,eps,delta,N,log_C,empirical_ratio,pass\n";
  f << format_double(report.r1) << "," << format_double(report.r2) << ","
    << format_double(report.constants.eps) << "," << format_double(report.constants.delta) << ","
    << report.constants.n_chain << "," << format_double(report.constants.log_c) << ","
    << format_double(report.empirical_ratio) << "," << (report.pass ? 1 : 0) << "\n";
}

}  // namespace nlpev
