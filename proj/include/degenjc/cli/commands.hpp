#pragma once

#include <ostream>

#include "degenjc/cli/output.hpp"
#include "degenjc/cli/run_config.hpp"

namespace degenjc::cli {

enum ExitCode : int { kExitOk = 0, kExitParameter = 1, kExitTolerance = 2 };

struct CommandResult {
  Report report;
  int exit_code = kExitOk;
};

CommandResult cmd_spectrum(const RunConfig& config);
CommandResult cmd_delta_scan(const RunConfig& config);
CommandResult cmd_gprime(const RunConfig& config);
CommandResult cmd_table1(const RunConfig& config);
CommandResult cmd_validate(const RunConfig& config);

CommandResult run_command(const RunConfig& config);

/// Validates, runs, writes the report to the configured destination (or
/// `stdout_sink`) and returns the exit code. Errors go to `err`.
int execute(const RunConfig& config, std::ostream& stdout_sink, std::ostream& err);

}  // namespace degenjc::cli
