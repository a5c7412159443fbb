#pragma once

#include <optional>
#include <string>
#include <vector>

#include "degenjc/steady_state.hpp"

namespace degenjc::cli {

enum class Command { spectrum, delta_scan, gprime, validate, table1 };
enum class OutputFormat { csv, json };

std::string to_string(Command c);
std::string to_string(OutputFormat f);

/// Everything a run needs. Rates and detunings share the unit of g0 (g0 = 1
/// by default, so plain numbers read as multiples of g0).
struct RunConfig {
  Command command = Command::spectrum;
  SystemParams params;
  std::vector<double> f_values;  // empty: command default
  double epsilon = 0.0;
  double det_min = -3.0;
  double det_max = 3.0;
  int points = 601;
  double cavity_offset = 0.0;
  int n_max = 2;
  OutputFormat format = OutputFormat::csv;
  std::string out;  // empty: $DEGENJC_OUTPUT_DIR/<command>.<ext>, else stdout
  double tol = 1e-3;

  /// F list with the per-command default applied: {1, 2, 3, 4} for
  /// delta-scan and table1, {1} otherwise.
  std::vector<HalfInt> f_list() const;
};

/// Throws ParameterError naming the violated precondition.
void validate(const RunConfig& config);

/// Resolved output path, or nullopt for stdout.
std::optional<std::string> output_path(const RunConfig& config);

/// Parses `degenjc <command> [options]`, including `--config PATH` files of
/// flat key=value lines whose keys are the long option names. Command-line
/// values win over the file. Throws ParameterError on any parse failure;
/// returns nullopt when help was requested (text already written to `help`).
std::optional<RunConfig> parse_command_line(int argc, const char* const* argv, std::string* help = nullptr);

}  // namespace degenjc::cli
