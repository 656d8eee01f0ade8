#ifndef ASYMPARTITA_REPORT_HPP
#define ASYMPARTITA_REPORT_HPP

// Row/diagnostic records shared by the command-line front end and the
// acceptance runner, with table, CSV and JSON renderers.

#include "asympartita/bignat.hpp"
#include "asympartita/diagnostic.hpp"
#include "asympartita/prec_real.hpp"

#include <json.hpp>

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <ctime>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

namespace asympartita {

inline constexpr const char* version_string = "0.1.0";

/// A cell. Integers beyond 64 bits travel as decimal strings.
using Value = std::variant<bool, std::int64_t, double, std::string>;

inline Value big_value(const BigNat& b) {
  if (b.fits_u64() && b.to_u64() <= static_cast<std::uint64_t>(INT64_MAX)) return static_cast<std::int64_t>(b.to_u64());
  return b.to_string();
}

/// Shortest round-trip digits; scientific outside [1e-4, 1e15).
inline std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0) return "0";
  char buf[64];
  const double a = std::abs(x);
  const auto fmt = (a >= 1e-4 && a < 1e15) ? std::chars_format::fixed : std::chars_format::scientific;
  auto res = std::to_chars(buf, buf + sizeof buf, x, fmt);
  return std::string(buf, res.ptr);
}

inline std::string format_value(const Value& v) {
  struct {
    std::string operator()(bool b) const { return b ? "true" : "false"; }
    std::string operator()(std::int64_t i) const { return std::to_string(i); }
    std::string operator()(double d) const { return format_double(d); }
    std::string operator()(const std::string& s) const { return s; }
  } visit;
  return std::visit(visit, v);
}

struct Report {
  std::string command;
  std::string version = version_string;
  std::optional<std::string> timestamp;
  std::optional<std::uint64_t> seed;
  unsigned long precision_bits = 0;
  std::vector<std::string> columns;
  std::vector<std::vector<Value>> rows;
  std::vector<Diagnostic> diagnostics;

  void add_row(std::vector<Value> row) {
    if (row.size() != columns.size()) throw DomainError("report row width does not match columns");
    rows.push_back(std::move(row));
  }
  void add_check(std::string name, bool pass, double measured, double tolerance, std::string detail = {}) {
    diagnostics.push_back({std::move(name), pass, measured, tolerance, std::move(detail)});
  }
  bool all_pass() const {
    for (const auto& d : diagnostics)
      if (!d.pass) return false;
    return true;
  }
};

inline std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

namespace detail {
inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline nlohmann::ordered_json to_json(const Value& v) {
  if (auto d = std::get_if<double>(&v); d && !std::isfinite(*d)) return format_double(*d);
  return std::visit([](const auto& x) { return nlohmann::ordered_json(x); }, v);
}

inline std::vector<std::string> diagnostic_header() { return {"check", "pass", "measured", "tolerance", "detail"}; }

inline std::vector<std::string> diagnostic_cells(const Diagnostic& d) {
  return {d.name, d.pass ? "true" : "false", format_double(d.measured), format_double(d.tolerance), d.detail};
}
}  // namespace detail

/// Header row then one line per row. Diagnostics follow after a blank line as
/// a second table with their own header.
inline std::string render_csv(const Report& r) {
  std::ostringstream out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << detail::csv_field(cells[i]);
    out << '\n';
  };
  if (!r.columns.empty()) {
    line(r.columns);
    for (const auto& row : r.rows) {
      std::vector<std::string> cells;
      for (const auto& v : row) cells.push_back(format_value(v));
      line(cells);
    }
  }
  if (!r.diagnostics.empty()) {
    if (!r.columns.empty()) out << '\n';
    line(detail::diagnostic_header());
    for (const auto& d : r.diagnostics) line(detail::diagnostic_cells(d));
  }
  return out.str();
}

inline nlohmann::ordered_json report_json(const Report& r) {
  nlohmann::ordered_json meta;
  meta["command"] = r.command;
  meta["version"] = r.version;
  if (r.timestamp) meta["timestamp"] = *r.timestamp;
  if (r.seed) meta["seed"] = *r.seed;
  if (r.precision_bits) meta["precision_bits"] = r.precision_bits;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : r.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) obj[r.columns[i]] = detail::to_json(row[i]);
    rows.push_back(std::move(obj));
  }
  nlohmann::ordered_json diags = nlohmann::ordered_json::array();
  for (const auto& d : r.diagnostics) {
    nlohmann::ordered_json obj;
    obj["check"] = d.name;
    obj["pass"] = d.pass;
    obj["measured"] = detail::to_json(d.measured);
    obj["tolerance"] = detail::to_json(d.tolerance);
    if (!d.detail.empty()) obj["detail"] = d.detail;
    diags.push_back(std::move(obj));
  }
  nlohmann::ordered_json j;
  j["metadata"] = std::move(meta);
  j["columns"] = r.columns;
  j["rows"] = std::move(rows);
  j["diagnostics"] = std::move(diags);
  j["status"] = r.all_pass() ? "pass" : "fail";
  return j;
}

inline std::string render_json(const Report& r) { return report_json(r).dump(2) + "\n"; }

inline std::string render_table(const Report& r) {
  std::ostringstream out;
  out << "# " << r.command << "  (asympartita " << r.version;
  if (r.precision_bits) out << ", " << r.precision_bits << " bits";
  if (r.seed) out << ", seed " << *r.seed;
  if (r.timestamp) out << ", " << *r.timestamp;
  out << ")\n";
  auto table = [&](const std::vector<std::string>& head, const std::vector<std::vector<std::string>>& body) {
    std::vector<std::size_t> w(head.size());
    for (std::size_t i = 0; i < head.size(); ++i) w[i] = head[i].size();
    for (const auto& row : body)
      for (std::size_t i = 0; i < row.size(); ++i) w[i] = std::max(w[i], row[i].size());
    auto emit = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        out << (i ? "  " : "") << cells[i];
        if (i + 1 < cells.size()) out << std::string(w[i] - cells[i].size(), ' ');
      }
      out << '\n';
    };
    emit(head);
    for (const auto& row : body) emit(row);
  };
  if (!r.columns.empty()) {
    std::vector<std::vector<std::string>> body;
    for (const auto& row : r.rows) {
      std::vector<std::string> cells;
      for (const auto& v : row) cells.push_back(format_value(v));
      body.push_back(std::move(cells));
    }
    table(r.columns, body);
  }
  if (!r.diagnostics.empty()) {
    if (!r.columns.empty()) out << '\n';
    std::vector<std::vector<std::string>> body;
    for (const auto& d : r.diagnostics) {
      auto cells = detail::diagnostic_cells(d);
      cells[1] = d.pass ? "PASS" : "FAIL";
      body.push_back(std::move(cells));
    }
    table(detail::diagnostic_header(), body);
    std::size_t failed = 0;
    for (const auto& d : r.diagnostics) failed += !d.pass;
    out << (failed ? std::to_string(failed) + " of " + std::to_string(r.diagnostics.size()) + " checks failed\n"
                   : "all " + std::to_string(r.diagnostics.size()) + " checks passed\n");
  }
  return out.str();
}

enum class OutputFormat { table, csv, json };

inline std::string render(const Report& r, OutputFormat f) {
  switch (f) {
    case OutputFormat::csv: return render_csv(r);
    case OutputFormat::json: return render_json(r);
    case OutputFormat::table: break;
  }
  return render_table(r);
}

}  // namespace asympartita

#endif  // ASYMPARTITA_REPORT_HPP
