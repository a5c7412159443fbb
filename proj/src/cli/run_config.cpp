#include "degenjc/cli/run_config.hpp"

#include <cmath>
#include <cstdlib>
#include <map>
#include <sstream>

#include <CLI11.hpp>

namespace degenjc::cli {

std::string to_string(Command c) {
  switch (c) {
    case Command::spectrum: return "spectrum";
    case Command::delta_scan: return "delta-scan";
    case Command::gprime: return "gprime";
    case Command::validate: return "validate";
    case Command::table1: return "table1";
  }
  return "unknown";
}

std::string to_string(OutputFormat f) { return f == OutputFormat::json ? "json" : "csv"; }

std::vector<HalfInt> RunConfig::f_list() const {
  std::vector<HalfInt> out;
  if (f_values.empty()) {
    if (command == Command::delta_scan || command == Command::table1) return {1, 2, 3, 4};
    return {1};
  }
  for (double f : f_values) {
    try {
      out.push_back(HalfInt::from_double(f));
    } catch (const std::invalid_argument&) {
      throw ParameterError("--F must be a multiple of 1/2, got " + std::to_string(f));
    }
  }
  return out;
}

void validate(const RunConfig& c) {
  c.params.validate();
  const auto fs = c.f_list();
  for (HalfInt f : fs) {
    if (f.twice() < 0) throw ParameterError("--F must be >= 0");
  }
  if (c.command != Command::delta_scan && c.command != Command::table1 && fs.size() != 1) {
    throw ParameterError("--F takes a single value for " + to_string(c.command));
  }
  if (c.command == Command::table1 || c.command == Command::delta_scan) {
    for (HalfInt f : fs) {
      if (f.twice() < 2) throw ParameterError(to_string(c.command) + " requires F >= 1");
    }
  }
  if (!std::isfinite(c.epsilon) || std::abs(c.epsilon) > kPi / 4 + 1e-12) {
    throw ParameterError("--epsilon must lie in [-pi/4, pi/4]");
  }
  if (c.points < 2) throw ParameterError("--points must be >= 2");
  if (!(c.det_min < c.det_max)) throw ParameterError("--det-min must be < --det-max");
  if (!std::isfinite(c.cavity_offset)) throw ParameterError("--cavity-offset must be finite");
  if (c.n_max < 1) throw ParameterError("--nmax must be >= 1");
  if (!(c.tol > 0)) throw ParameterError("--tol must be > 0");
}

std::optional<std::string> output_path(const RunConfig& c) {
  if (!c.out.empty()) return c.out;
  const char* dir = std::getenv("DEGENJC_OUTPUT_DIR");
  if (dir == nullptr || *dir == '\0') return std::nullopt;
  std::string path(dir);
  if (path.back() != '/') path += '/';
  return path + to_string(c.command) + "." + to_string(c.format);
}

std::optional<RunConfig> parse_command_line(int argc, const char* const* argv, std::string* help) {
  RunConfig c;
  CLI::App app{"Spectra of a degenerate two-level atom in a driven cavity", "degenjc"};
  app.set_config("--config", "", "file of flat key=value lines (keys are long option names)");
  app.require_subcommand(1);

  app.add_option("--F", c.f_values, "ground-state angular momentum (list for delta-scan/table1)")->delimiter(',');
  app.add_option("--epsilon", c.epsilon, "elliptic angle in [-pi/4, pi/4]");
  app.add_option("--g0", c.params.g0, "atom-cavity coupling");
  app.add_option("--kappa", c.params.kappa, "cavity field decay rate");
  app.add_option("--gamma", c.params.gamma, "atomic dipole decay rate");
  app.add_option("--cavity-offset", c.cavity_offset, "omega_C - omega_A");
  app.add_option("--drive", c.params.drive, "pump amplitude E");
  app.add_option("--det-min", c.det_min, "first laser detuning of the sweep");
  app.add_option("--det-max", c.det_max, "last laser detuning of the sweep");
  app.add_option("--points", c.points, "grid points");
  app.add_option("--nmax", c.n_max, "photon cutoff for the oracle");
  const std::map<std::string, OutputFormat> formats{{"csv", OutputFormat::csv}, {"json", OutputFormat::json}};
  app.add_option("--format", c.format, "csv or json")->transform(CLI::CheckedTransformer(formats));
  app.add_option("--out", c.out, "output file (default: $DEGENJC_OUTPUT_DIR or stdout)");
  app.add_option("--tol", c.tol, "relative block tolerance for validate");

  const std::vector<std::pair<Command, std::string>> commands{
      {Command::spectrum, "cavity and spontaneous-emission spectra with the two-level comparison"},
      {Command::delta_scan, "delta(eps) and g'/g0 over the elliptic angle"},
      {Command::gprime, "effective coupling, delta and natural-basis populations"},
      {Command::validate, "compare the analytic steady state with the Liouvillian oracle"},
      {Command::table1, "maximum of delta(eps) for F = 1..4"},
  };
  for (const auto& [cmd, text] : commands) {
    app.add_subcommand(to_string(cmd), text)->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    if (help != nullptr) *help = app.help();
    return std::nullopt;
  } catch (const CLI::CallForAllHelp&) {
    if (help != nullptr) *help = app.help("", CLI::AppFormatMode::All);
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw ParameterError(e.what());
  }

  for (const auto& [cmd, text] : commands) {
    if (app.got_subcommand(to_string(cmd))) c.command = cmd;
  }
  return c;
}

}  // namespace degenjc::cli
