#include "degenjc/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "degenjc/spectrum_kernels.hpp"

namespace degenjc {

namespace {

constexpr int kDeltaGridPoints = 2001;
constexpr double kGoldenTolerance = 1e-6;

double spectral_denominator(const SystemParams& p, const AlphaCoefficients& a) {
  const Complex prod = p.e_a() * p.e_c();
  const double g2 = p.g0 * p.g0;
  return std::norm(prod) - 2 * prod.real() * a.ratio1() * g2 + a.ratio2() * g2 * g2;
}

}  // namespace

double t_cav(const SystemParams& params, const AlphaCoefficients& alphas) {
  params.validate();
  return params.drive * params.drive * std::norm(params.e_a()) / spectral_denominator(params, alphas);
}

double t_sp(const SystemParams& params, const AlphaCoefficients& alphas) {
  params.validate();
  return params.drive * params.drive * alphas.ratio1() * params.g0 * params.g0 /
         spectral_denominator(params, alphas);
}

TwoLevelSpectrum two_level_spectrum(const SystemParams& params, double g_eff) {
  params.validate();
  if (!(g_eff >= 0)) throw ParameterError("effective coupling must be >= 0");
  const double den = std::norm(params.e_a() * params.e_c() - g_eff * g_eff);
  const double e2 = params.drive * params.drive;
  return {e2 * std::norm(params.e_a()) / den, e2 * g_eff * g_eff / den};
}

EffectiveTwoLevel effective_coupling(const AlphaCoefficients& alphas, const SystemParams& params) {
  params.validate();
  EffectiveTwoLevel out;
  out.g_prime = std::sqrt(alphas.ratio1()) * params.g0;
  out.delta = std::max(0.0, alphas.alpha0 * alphas.alpha2 / (alphas.alpha1 * alphas.alpha1) - 1.0);
  const double g2 = params.g0 * params.g0;
  if (out.delta == 0.0 || g2 == 0.0) {
    out.condition_margin = std::numeric_limits<double>::infinity();
  } else {
    out.condition_margin = 4 * params.kappa * params.gamma / g2 / out.delta;
  }
  return out;
}

AlphaCoefficients spectral_alphas(HalfInt f, Polarization pol) {
  return alpha_trace(build_natural_basis(f, pol));
}

double delta_of(HalfInt f, double epsilon) {
  const AlphaCoefficients a = spectral_alphas(f, Polarization(epsilon));
  return std::max(0.0, a.alpha0 * a.alpha2 / (a.alpha1 * a.alpha1) - 1.0);
}

DeltaMax delta_max(HalfInt f) {
  if (f.twice() < 2) throw ParameterError("delta_max requires F >= 1");
  const double edge = kPi / 4;
  const double step = 2 * edge / (kDeltaGridPoints - 1);
  int best = 0;
  double best_value = -1.0;
  for (int k = 0; k < kDeltaGridPoints; ++k) {
    const double eps = std::min(edge, -edge + k * step);
    const double d = delta_of(f, eps);
    if (d > best_value) {
      best_value = d;
      best = k;
    }
  }

  double lo = std::max(-edge, -edge + (best - 1) * step);
  double hi = std::min(edge, -edge + (best + 1) * step);
  const double inv_phi = (std::sqrt(5.0) - 1) / 2;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = delta_of(f, x1);
  double f2 = delta_of(f, x2);
  while (hi - lo > kGoldenTolerance) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = delta_of(f, x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = delta_of(f, x1);
    }
  }
  const double arg = 0.5 * (lo + hi);
  const double refined = delta_of(f, arg);
  if (refined >= best_value) return {refined, std::abs(arg)};
  return {best_value, std::abs(-edge + best * step)};
}

PopulationStats population_stats(const NaturalBasis& basis) {
  if (!basis.has_pumping()) throw ParameterError("population_stats needs a basis with pumping matrices");
  const int n = static_cast<int>(basis.lambdas.size());
  PopulationStats out;
  out.pi.resize(n);
  RVector lambda_sq(n);
  for (int i = 0; i < n; ++i) {
    lambda_sq(i) = basis.lambdas(i) * basis.lambdas(i);
    if (lambda_sq(i) < 1e-12) throw IllConditionedError("transition strength too small for (VV^dag)^-1");
    out.pi(i) = basis.nus(i) / lambda_sq(i);
  }
  out.pi /= out.pi.sum();
  out.mean_lambda_sq = out.pi.dot(lambda_sq);
  out.var_lambda_sq = out.pi.dot((lambda_sq.array() - out.mean_lambda_sq).square().matrix());
  return out;
}

double lambda_sq_linear(HalfInt f, int i) {
  const int n = f.twice() + 1;
  if (i < 1 || i > n) throw ParameterError("sublevel index must lie in 1..2F+1");
  const double ff = f.value();
  return (2 * ff + 2 - i) * i / ((ff + 1) * (2 * ff + 1));
}

std::vector<SpectrumPoint> sweep(const SystemParams& params, const AlphaCoefficients& alphas,
                                 std::span<const double> detuning, double cavity_offset) {
  params.validate();
  if (!std::is_sorted(detuning.begin(), detuning.end())) throw ParameterError("detuning grid must be sorted");
  if (!std::isfinite(cavity_offset)) throw ParameterError("cavity offset must be finite");

  SpectrumKernelParams kp;
  kp.kappa = params.kappa;
  kp.gamma = params.gamma;
  kp.g0_sq = params.g0 * params.g0;
  kp.ratio1 = alphas.ratio1();
  kp.ratio2 = alphas.ratio2();
  kp.drive_sq = params.drive * params.drive;
  kp.g_eff_sq = kp.ratio1 * kp.g0_sq;
  kp.cavity_offset = cavity_offset;

  const std::size_t n = detuning.size();
  std::vector<double> cav(n), sp(n), cav2(n), sp2(n);
  evaluate_spectrum(kp, detuning.data(), n, {cav.data(), sp.data(), cav2.data(), sp2.data()});

  std::vector<SpectrumPoint> out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = {detuning[k], cav[k], sp[k], cav2[k], sp2[k]};
  return out;
}

std::vector<double> linear_grid(double lo, double hi, int points) {
  if (points < 2) throw ParameterError("grid needs at least 2 points");
  if (!(lo < hi)) throw ParameterError("grid requires min < max");
  std::vector<double> grid(static_cast<std::size_t>(points));
  const double step = (hi - lo) / (points - 1);
  for (int k = 0; k < points; ++k) grid[static_cast<std::size_t>(k)] = lo + k * step;
  grid.back() = hi;
  return grid;
}

}  // namespace degenjc
