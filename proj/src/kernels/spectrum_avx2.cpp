#include <immintrin.h>

#include "degenjc/spectrum_kernels.hpp"

namespace degenjc {

// Mirrors spectrum_kernel_scalar operation by operation (no FMA).
void spectrum_kernel_avx2(const SpectrumKernelParams& p, const double* detuning, std::size_t n,
                          SpectrumKernelOutput out) {
  const double kg_s = p.kappa * p.gamma;
  const double c1_s = 2.0 * p.ratio1 * p.g0_sq;
  const double c2_s = p.ratio2 * p.g0_sq * p.g0_sq;
  const double sp_num_s = p.drive_sq * (p.ratio1 * p.g0_sq);
  const double sp2_num_s = p.drive_sq * p.g_eff_sq;
  const double gamma_sq_s = p.gamma * p.gamma;

  const __m256d kg = _mm256_set1_pd(kg_s);
  const __m256d c1 = _mm256_set1_pd(c1_s);
  const __m256d c2 = _mm256_set1_pd(c2_s);
  const __m256d sp_num = _mm256_set1_pd(sp_num_s);
  const __m256d sp2_num = _mm256_set1_pd(sp2_num_s);
  const __m256d gamma_sq = _mm256_set1_pd(gamma_sq_s);
  const __m256d kappa = _mm256_set1_pd(p.kappa);
  const __m256d gamma = _mm256_set1_pd(p.gamma);
  const __m256d offset = _mm256_set1_pd(p.cavity_offset);
  const __m256d g_eff_sq = _mm256_set1_pd(p.g_eff_sq);
  const __m256d drive_sq = _mm256_set1_pd(p.drive_sq);
  const __m256d sign = _mm256_set1_pd(-0.0);

  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d da = _mm256_loadu_pd(detuning + k);
    const __m256d dc = _mm256_add_pd(da, offset);
    const __m256d pr = _mm256_sub_pd(_mm256_mul_pd(da, dc), kg);
    const __m256d pi = _mm256_xor_pd(sign, _mm256_add_pd(_mm256_mul_pd(da, kappa), _mm256_mul_pd(gamma, dc)));
    const __m256d pi_sq = _mm256_mul_pd(pi, pi);
    const __m256d p_sq = _mm256_add_pd(_mm256_mul_pd(pr, pr), pi_sq);
    const __m256d ea_sq = _mm256_add_pd(_mm256_mul_pd(da, da), gamma_sq);
    const __m256d den = _mm256_add_pd(_mm256_sub_pd(p_sq, _mm256_mul_pd(pr, c1)), c2);
    const __m256d shifted = _mm256_sub_pd(pr, g_eff_sq);
    const __m256d den2 = _mm256_add_pd(_mm256_mul_pd(shifted, shifted), pi_sq);
    const __m256d cav_num = _mm256_mul_pd(drive_sq, ea_sq);
    _mm256_storeu_pd(out.t_cav + k, _mm256_div_pd(cav_num, den));
    _mm256_storeu_pd(out.t_sp + k, _mm256_div_pd(sp_num, den));
    _mm256_storeu_pd(out.t_cav_2lvl + k, _mm256_div_pd(cav_num, den2));
    _mm256_storeu_pd(out.t_sp_2lvl + k, _mm256_div_pd(sp2_num, den2));
  }
  if (k < n) {
    SpectrumKernelOutput tail{out.t_cav + k, out.t_sp + k, out.t_cav_2lvl + k, out.t_sp_2lvl + k};
    spectrum_kernel_scalar(p, detuning + k, n - k, tail);
  }
}

}  // namespace degenjc
