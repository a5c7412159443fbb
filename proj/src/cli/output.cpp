#include "degenjc/cli/output.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

namespace degenjc::cli {

namespace {

std::string quoted(const std::string& s) { return nlohmann::json(s).dump(); }

std::string csv_cell(const Cell& cell) {
  if (const auto* d = std::get_if<double>(&cell)) return format_number(*d);
  if (const auto* i = std::get_if<long long>(&cell)) return std::to_string(*i);
  if (const auto* b = std::get_if<bool>(&cell)) return *b ? "true" : "false";
  const auto& s = std::get<std::string>(cell);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string escaped = "\"";
  for (char ch : s) escaped += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return escaped + "\"";
}

std::string json_cell(const Cell& cell) {
  if (const auto* d = std::get_if<double>(&cell)) return std::isfinite(*d) ? format_number(*d) : "null";
  if (const auto* i = std::get_if<long long>(&cell)) return std::to_string(*i);
  if (const auto* b = std::get_if<bool>(&cell)) return *b ? "true" : "false";
  return quoted(std::get<std::string>(cell));
}

void json_object(const std::vector<std::pair<std::string, Cell>>& items, std::ostream& out) {
  out << "{";
  for (std::size_t k = 0; k < items.size(); ++k) {
    out << (k ? ", " : "") << quoted(items[k].first) << ": " << json_cell(items[k].second);
  }
  out << "}";
}

}  // namespace

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_csv(const Report& r, std::ostream& out) {
  out << "# command = " << r.command << "\n";
  for (const auto& [k, v] : r.parameters) out << "# " << k << " = " << csv_cell(v) << "\n";
  for (const auto& [k, v] : r.derived) out << "# " << k << " = " << csv_cell(v) << "\n";
  for (const auto& w : r.warnings) out << "# warning = " << w << "\n";
  for (std::size_t c = 0; c < r.columns.size(); ++c) out << (c ? "," : "") << r.columns[c];
  out << "\n";
  for (const auto& row : r.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << csv_cell(row[c]);
    out << "\n";
  }
}

void write_json(const Report& r, std::ostream& out) {
  out << "{\n  \"command\": " << quoted(r.command) << ",\n  \"parameters\": ";
  json_object(r.parameters, out);
  out << ",\n  \"derived\": ";
  json_object(r.derived, out);
  out << ",\n  \"warnings\": [";
  for (std::size_t k = 0; k < r.warnings.size(); ++k) out << (k ? ", " : "") << quoted(r.warnings[k]);
  out << "],\n  \"columns\": [";
  for (std::size_t k = 0; k < r.columns.size(); ++k) out << (k ? ", " : "") << quoted(r.columns[k]);
  out << "],\n  \"rows\": [";
  for (std::size_t k = 0; k < r.rows.size(); ++k) {
    out << (k ? ",\n    [" : "\n    [");
    for (std::size_t c = 0; c < r.rows[k].size(); ++c) out << (c ? ", " : "") << json_cell(r.rows[k][c]);
    out << "]";
  }
  out << (r.rows.empty() ? "]\n}\n" : "\n  ]\n}\n");
}

}  // namespace degenjc::cli
