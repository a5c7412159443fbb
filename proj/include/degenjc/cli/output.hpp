#pragma once

#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace degenjc::cli {

using Cell = std::variant<double, long long, std::string, bool>;

/// Self-describing result table: parameter and derived-quantity metadata
/// followed by named columns.
struct Report {
  std::string command;
  std::vector<std::pair<std::string, Cell>> parameters;
  std::vector<std::pair<std::string, Cell>> derived;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::string> warnings;
};

/// %.17g; non-finite values print as nan/inf/-inf.
std::string format_number(double value);

/// `# key = value` lines for parameters and derived values, then a header
/// row and comma-separated rows.
void write_csv(const Report& report, std::ostream& out);

/// {"command", "parameters", "derived", "warnings", "columns", "rows"}.
/// Non-finite numbers become null.
void write_json(const Report& report, std::ostream& out);

}  // namespace degenjc::cli
