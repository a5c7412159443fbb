#pragma once

#include <span>
#include <vector>

#include "degenjc/coefficients.hpp"
#include "degenjc/steady_state.hpp"

namespace degenjc {

struct SpectrumPoint {
  double detuning = 0.0;
  double t_cav = 0.0;
  double t_sp = 0.0;
  double t_cav_2lvl = 0.0;
  double t_sp_2lvl = 0.0;
};

struct EffectiveTwoLevel {
  double g_prime = 0.0;
  double delta = 0.0;
  /// (4 kappa gamma / g0^2) / delta; infinite when delta = 0 or g0 = 0.
  double condition_margin = 0.0;
};

/// Cavity transmission Tr[a^dag a rho] at leading order:
///   E^2 |E_A|^2 / (|E_A E_C|^2 - 2 Re[E_A E_C] r1 g0^2 + r2 g0^4),
/// with r1 = alpha1/alpha0 and r2 = alpha2/alpha0.
double t_cav(const SystemParams& params, const AlphaCoefficients& alphas);

/// Spontaneous-emission signal Tr[sum_q D_q^dag D_q rho]: E^2 r1 g0^2 over
/// the same denominator.
double t_sp(const SystemParams& params, const AlphaCoefficients& alphas);

struct TwoLevelSpectrum {
  double t_cav = 0.0;
  double t_sp = 0.0;
};

/// Nondegenerate two-level atom with coupling g_eff:
///   E^2 |E_A|^2 / |E_A E_C - g_eff^2|^2 and E^2 g_eff^2 / |E_A E_C - g_eff^2|^2.
/// Throws ParameterError for negative g_eff.
TwoLevelSpectrum two_level_spectrum(const SystemParams& params, double g_eff);

/// g' = sqrt(alpha1/alpha0) g0 and delta = alpha0 alpha2 / alpha1^2 - 1
/// (clipped at 0 against roundoff).
EffectiveTwoLevel effective_coupling(const AlphaCoefficients& alphas, const SystemParams& params);

/// Trace-route alphas for (F, eps); finite up to and including circular
/// polarization.
AlphaCoefficients spectral_alphas(HalfInt f, Polarization pol);

/// delta(eps) from the trace route.
double delta_of(HalfInt f, double epsilon);

struct DeltaMax {
  double delta_max = 0.0;
  double argmax_epsilon = 0.0;
};

/// Maximum of delta(eps): 2001-point grid on [-pi/4, pi/4] then golden-section
/// refinement to 1e-6 in eps. delta is even, so the maximiser is reported with
/// eps >= 0. Throws ParameterError for F < 1.
DeltaMax delta_max(HalfInt f);

struct PopulationStats {
  RVector pi;  // ground-population fractions over natural-basis sublevels
  double mean_lambda_sq = 0.0;
  double var_lambda_sq = 0.0;
};

/// pi_i = (nu_i/lambda_i^2) / sum_j (nu_j/lambda_j^2) with pi-weighted mean
/// and variance of lambda_i^2, so that g'^2 = mean g0^2 and delta = var/mean^2.
PopulationStats population_stats(const NaturalBasis& basis);

/// lambda_i^2 = (2F+2-i) i / ((F+1)(2F+1)) at linear polarization, i = 1..2F+1.
double lambda_sq_linear(HalfInt f, int i);

/// All four spectra over `detuning` (sorted ascending; Delta_A = x,
/// Delta_C = x + cavity_offset). params.delta_a/delta_c are ignored.
/// Throws ParameterError for an unsorted grid.
std::vector<SpectrumPoint> sweep(const SystemParams& params, const AlphaCoefficients& alphas,
                                 std::span<const double> detuning, double cavity_offset);

/// `points` evenly spaced values on [lo, hi]; throws ParameterError unless
/// points >= 2 and lo < hi.
std::vector<double> linear_grid(double lo, double hi, int points);

}  // namespace degenjc
