#include "degenjc/spectrum_kernels.hpp"

namespace degenjc {

void spectrum_kernel_scalar(const SpectrumKernelParams& p, const double* detuning, std::size_t n,
                            SpectrumKernelOutput out) {
  const double kg = p.kappa * p.gamma;
  const double c1 = 2.0 * p.ratio1 * p.g0_sq;
  const double c2 = p.ratio2 * p.g0_sq * p.g0_sq;
  const double sp_num = p.drive_sq * (p.ratio1 * p.g0_sq);
  const double sp2_num = p.drive_sq * p.g_eff_sq;
  const double gamma_sq = p.gamma * p.gamma;
  for (std::size_t k = 0; k < n; ++k) {
    const double da = detuning[k];
    const double dc = da + p.cavity_offset;
    // E_A E_C = (da - i gamma)(dc - i kappa)
    const double pr = da * dc - kg;
    const double pi = -(da * p.kappa + p.gamma * dc);
    const double p_sq = pr * pr + pi * pi;
    const double ea_sq = da * da + gamma_sq;
    const double den = (p_sq - pr * c1) + c2;
    const double shifted = pr - p.g_eff_sq;
    const double den2 = shifted * shifted + pi * pi;
    const double cav_num = p.drive_sq * ea_sq;
    out.t_cav[k] = cav_num / den;
    out.t_sp[k] = sp_num / den;
    out.t_cav_2lvl[k] = cav_num / den2;
    out.t_sp_2lvl[k] = sp2_num / den2;
  }
}

}  // namespace degenjc
