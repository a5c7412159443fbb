#include "degenjc/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>

#include "degenjc/coefficients.hpp"
#include "degenjc/oracle.hpp"
#include "degenjc/spectra.hpp"

namespace degenjc::cli {

namespace {

// Published maxima of delta(eps), keyed by 2F.
const std::map<int, double>& reference_delta_max() {
  static const std::map<int, double> table{{2, 0.043}, {4, 0.027}, {6, 0.016}, {8, 0.010}};
  return table;
}

constexpr double kTableTolerance = 1e-3;
constexpr double kMarginTarget = 10.0;
constexpr double kRatioLow = 3.0;
constexpr double kRatioHigh = 5.0;
constexpr double kRatioNoiseFloor = 1e-10;
constexpr double kNmaxTolerance = 1e-8;
constexpr double kDriveWarning = 0.1;  // E / kappa

Report base_report(const RunConfig& c) {
  Report r;
  r.command = to_string(c.command);
  std::string fs;
  for (HalfInt f : c.f_list()) fs += (fs.empty() ? "" : " ") + f.to_string();
  r.parameters = {
      {"F", fs},
      {"epsilon", c.epsilon},
      {"g0", c.params.g0},
      {"kappa", c.params.kappa},
      {"gamma", c.params.gamma},
      {"cavity_offset", c.cavity_offset},
      {"drive", c.params.drive},
      {"det_min", c.det_min},
      {"det_max", c.det_max},
      {"points", static_cast<long long>(c.points)},
      {"nmax", static_cast<long long>(c.n_max)},
      {"format", to_string(c.format)},
  };
  if (c.command == Command::validate) r.parameters.emplace_back("tol", c.tol);
  return r;
}

void add_effective(Report& r, const AlphaCoefficients& a, const EffectiveTwoLevel& eff) {
  r.derived.emplace_back("alpha0", a.alpha0);
  r.derived.emplace_back("alpha1", a.alpha1);
  r.derived.emplace_back("alpha2", a.alpha2);
  r.derived.emplace_back("g_prime", eff.g_prime);
  r.derived.emplace_back("delta", eff.delta);
  r.derived.emplace_back("condition_margin", eff.condition_margin);
  if (eff.condition_margin < kMarginTarget) {
    r.warnings.push_back("4 kappa gamma / g0^2 >> delta(eps) not satisfied (margin " +
                         format_number(eff.condition_margin) + "); two-level reduction may be inaccurate");
  }
}

void add_check(Report& r, bool& all_pass, const std::string& name, double value, double limit, bool pass) {
  r.rows.push_back({name, value, limit, pass});
  all_pass = all_pass && pass;
}

}  // namespace

CommandResult cmd_spectrum(const RunConfig& c) {
  const HalfInt f = c.f_list().front();
  const Polarization pol(c.epsilon);
  const AlphaCoefficients alphas = spectral_alphas(f, pol);
  const EffectiveTwoLevel eff = effective_coupling(alphas, c.params);
  const auto grid = linear_grid(c.det_min, c.det_max, c.points);
  const auto points = sweep(c.params, alphas, grid, c.cavity_offset);

  CommandResult out{base_report(c), kExitOk};
  add_effective(out.report, alphas, eff);
  double max_dev = 0.0;
  for (const auto& p : points) {
    if (p.t_cav > 0) max_dev = std::max(max_dev, std::abs(p.t_cav - p.t_cav_2lvl) / p.t_cav);
  }
  out.report.derived.emplace_back("max_relative_deviation_t_cav", max_dev);
  out.report.columns = {"detuning", "t_cav", "t_sp", "t_cav_2lvl", "t_sp_2lvl"};
  for (const auto& p : points) out.report.rows.push_back({p.detuning, p.t_cav, p.t_sp, p.t_cav_2lvl, p.t_sp_2lvl});
  return out;
}

CommandResult cmd_delta_scan(const RunConfig& c) {
  CommandResult out{base_report(c), kExitOk};
  out.report.columns = {"F", "epsilon", "delta", "g_prime_over_g0"};
  const auto grid = linear_grid(-kPi / 4, kPi / 4, c.points);
  for (HalfInt f : c.f_list()) {
    for (double eps : grid) {
      const AlphaCoefficients a = spectral_alphas(f, Polarization(eps));
      const double delta = std::max(0.0, a.alpha0 * a.alpha2 / (a.alpha1 * a.alpha1) - 1.0);
      out.report.rows.push_back({f.value(), eps, delta, std::sqrt(a.ratio1())});
    }
  }
  return out;
}

CommandResult cmd_gprime(const RunConfig& c) {
  const HalfInt f = c.f_list().front();
  const NaturalBasis basis = build_natural_basis(f, Polarization(c.epsilon));
  const AlphaCoefficients alphas = alpha_trace(basis);
  const EffectiveTwoLevel eff = effective_coupling(alphas, c.params);
  const PopulationStats stats = population_stats(basis);

  CommandResult out{base_report(c), kExitOk};
  add_effective(out.report, alphas, eff);
  out.report.derived.emplace_back("mean_lambda_sq", stats.mean_lambda_sq);
  out.report.derived.emplace_back("var_lambda_sq", stats.var_lambda_sq);
  out.report.columns = {"i", "lambda_sq", "nu", "pi"};
  for (int i = 0; i < basis.lambdas.size(); ++i) {
    out.report.rows.push_back({static_cast<long long>(i + 1), basis.lambdas(i) * basis.lambdas(i), basis.nus(i),
                               stats.pi(i)});
  }
  return out;
}

CommandResult cmd_table1(const RunConfig& c) {
  CommandResult out{base_report(c), kExitOk};
  out.report.columns = {"F", "delta_max", "argmax_epsilon", "reference", "deviation", "pass"};
  for (HalfInt f : c.f_list()) {
    const auto ref = reference_delta_max().find(f.twice());
    if (ref == reference_delta_max().end()) {
      throw ParameterError("table1 has reference values only for F = 1, 2, 3, 4");
    }
    const DeltaMax dm = delta_max(f);
    const double dev = dm.delta_max - ref->second;
    const bool pass = std::abs(dev) <= kTableTolerance;
    if (!pass) out.exit_code = kExitTolerance;
    out.report.rows.push_back({f.value(), dm.delta_max, dm.argmax_epsilon, ref->second, dev, pass});
  }
  out.report.derived.emplace_back("tolerance", kTableTolerance);
  return out;
}

CommandResult cmd_validate(const RunConfig& c) {
  const HalfInt f = c.f_list().front();
  const CouplingOperators ops = coupling_operator(f, Polarization(c.epsilon));
  const NaturalBasis basis = build_natural_basis(ops);
  const TruncatedHilbert space(f, c.n_max);

  SystemParams half = c.params;
  half.drive = 0.5 * c.params.drive;

  const SteadyStateBlocks blocks = stationary_density(c.params, basis, ops);
  const SteadyStateBlocks blocks_half = stationary_density(half, basis, ops);
  const OracleSteadyState num = numerical_steady_state(c.params, ops, space);
  const OracleSteadyState num_half = numerical_steady_state(half, ops, space);
  const BlockComparison cmp = compare_blocks(blocks, num.rho, space);
  const BlockComparison cmp_half = compare_blocks(blocks_half, num_half.rho, space);

  CommandResult out{base_report(c), kExitOk};
  Report& r = out.report;
  r.columns = {"check", "value", "limit", "pass"};
  bool ok = true;

  const std::vector<std::tuple<std::string, double, double>> errors{
      {"rho_00", cmp.rho00, cmp_half.rho00}, {"rho_aa", cmp.aa, cmp_half.aa},
      {"rho_bb", cmp.bb, cmp_half.bb},       {"rho_0a", cmp.zero_a, cmp_half.zero_a},
      {"rho_0b", cmp.zero_b, cmp_half.zero_b}, {"rho_ab", cmp.ab, cmp_half.ab},
  };
  for (const auto& [name, err, err_half] : errors) add_check(r, ok, name + "_error", err, c.tol, err <= c.tol);
  for (const auto& [name, err, err_half] : errors) {
    // Errors at roundoff level carry no scaling information.
    const double ratio = err / std::max(err_half, 1e-300);
    const bool pass = err < kRatioNoiseFloor || (ratio >= kRatioLow && ratio <= kRatioHigh);
    add_check(r, ok, name + "_error_halving_ratio", ratio, 4.0, pass);
  }
  add_check(r, ok, "oracle_unique", num.unique ? 1.0 : 0.0, 1.0, num.unique);

  const CMatrix l = liouvillian(c.params, ops, space);
  const CMatrix l_half = liouvillian(half, ops, space);
  const double res = liouvillian_residual(l, embed_blocks(blocks, space), space, true);
  const double res_half = liouvillian_residual(l_half, embed_blocks(blocks_half, space), space, true);
  const double res_ratio = res / std::max(res_half, 1e-300);
  add_check(r, ok, "liouvillian_residual_one_quantum_halving_ratio", res_ratio, 8.0,
            std::abs(res_ratio / 8.0 - 1.0) <= 0.3);

  const TruncatedResiduals tr = truncated_equation_residuals(c.params, ops, blocks);
  const TruncatedResiduals tr_half = truncated_equation_residuals(half, ops, blocks_half);
  const double off_ratio = tr.off_diagonal() / std::max(tr_half.off_diagonal(), 1e-300);
  add_check(r, ok, "truncated_offdiagonal_residual_halving_ratio", off_ratio, 8.0,
            std::abs(off_ratio / 8.0 - 1.0) <= 0.3);
  r.derived.emplace_back("truncated_diagonal_residual", tr.diagonal());
  r.derived.emplace_back("truncated_offdiagonal_residual", tr.off_diagonal());

  const OracleObservables obs = oracle_observables(num.rho, space);
  const bool can_grow = space.levels() * (c.n_max + 2) <= kMaxOracleDim;
  if (can_grow) {
    const TruncatedHilbert bigger(f, c.n_max + 1);
    const OracleObservables obs_big = oracle_observables(numerical_steady_state(c.params, ops, bigger).rho, bigger);
    const double change = std::max(std::abs(obs_big.photons - obs.photons) / obs_big.photons,
                                   std::abs(obs_big.excited - obs.excited) / obs_big.excited);
    add_check(r, ok, "nmax_robustness_relative_change", change, kNmaxTolerance, change < kNmaxTolerance);
  } else {
    r.warnings.push_back("n_max robustness not checked: n_max + 1 exceeds the oracle size limit");
  }

  r.derived.emplace_back("eta", blocks.eta);
  r.derived.emplace_back("eta_leading", blocks.eta_leading);
  r.derived.emplace_back("perturbation_strength", blocks.perturbation_strength);
  r.derived.emplace_back("oracle_sigma_min", num.sigma_min);
  r.derived.emplace_back("oracle_residual", num.residual);
  r.derived.emplace_back("oracle_photons", obs.photons);
  r.derived.emplace_back("analytic_photons", blocks.rho_aa.trace().real());
  r.derived.emplace_back("oracle_excited", obs.excited);
  r.derived.emplace_back("analytic_excited", blocks.rho_bb.trace().real());

  if (!blocks.weak_drive() || c.params.drive > kDriveWarning * c.params.kappa) {
    r.warnings.push_back("drive outside the weak-drive regime (E/kappa = " +
                         format_number(c.params.drive / c.params.kappa) + ", perturbation strength " +
                         format_number(blocks.perturbation_strength) + "); leading-order blocks are not reliable");
  }
  if (!ok) out.exit_code = kExitTolerance;
  return out;
}

CommandResult run_command(const RunConfig& c) {
  switch (c.command) {
    case Command::spectrum: return cmd_spectrum(c);
    case Command::delta_scan: return cmd_delta_scan(c);
    case Command::gprime: return cmd_gprime(c);
    case Command::validate: return cmd_validate(c);
    case Command::table1: return cmd_table1(c);
  }
  throw ParameterError("unknown command");
}

int execute(const RunConfig& c, std::ostream& stdout_sink, std::ostream& err) {
  CommandResult result;
  try {
    validate(c);
    result = run_command(c);
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << "\n";
    return kExitParameter;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitParameter;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitTolerance;
  }

  const auto path = output_path(c);
  std::ofstream file;
  if (path) {
    file.open(*path, std::ios::out | std::ios::trunc);
    if (!file) {
      err << "error: cannot write " << *path << "\n";
      return kExitParameter;
    }
  }
  std::ostream& sink = path ? static_cast<std::ostream&>(file) : stdout_sink;
  if (c.format == OutputFormat::json) {
    write_json(result.report, sink);
  } else {
    write_csv(result.report, sink);
  }
  sink.flush();
  if (!sink) {
    err << "error: write failed\n";
    return kExitParameter;
  }
  for (const auto& w : result.report.warnings) err << "warning: " << w << "\n";
  return result.exit_code;
}

}  // namespace degenjc::cli
