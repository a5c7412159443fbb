#pragma once

#include <cstddef>
#include <string>

namespace degenjc {

/// Constants shared by every point of a detuning sweep. The laser detuning x
/// sets Delta_A = x and Delta_C = x + cavity_offset.
struct SpectrumKernelParams {
  double kappa = 0.0;
  double gamma = 0.0;
  double g0_sq = 0.0;
  double ratio1 = 1.0;  // alpha1 / alpha0
  double ratio2 = 1.0;  // alpha2 / alpha0
  double drive_sq = 0.0;
  double g_eff_sq = 0.0;
  double cavity_offset = 0.0;
};

struct SpectrumKernelOutput {
  double* t_cav;
  double* t_sp;
  double* t_cav_2lvl;
  double* t_sp_2lvl;
};

enum class KernelIsa { scalar, avx2 };

using SpectrumKernel = void (*)(const SpectrumKernelParams&, const double* detuning, std::size_t n,
                                SpectrumKernelOutput out);

/// Reference implementation. The AVX2 variant performs the same IEEE
/// operations in the same order without contraction, so both agree bitwise.
void spectrum_kernel_scalar(const SpectrumKernelParams& p, const double* detuning, std::size_t n,
                            SpectrumKernelOutput out);

/// True when the AVX2 kernel was compiled in and the CPU supports it.
bool kernel_isa_available(KernelIsa isa);

/// Selected once from CPU features; DEGENJC_SIMD=scalar forces the scalar
/// kernel. set_kernel_isa overrides (throws std::invalid_argument if the ISA
/// is unavailable).
KernelIsa active_kernel_isa();
void set_kernel_isa(KernelIsa isa);
std::string to_string(KernelIsa isa);

SpectrumKernel kernel_for(KernelIsa isa);

/// Runs the active kernel.
void evaluate_spectrum(const SpectrumKernelParams& p, const double* detuning, std::size_t n,
                       SpectrumKernelOutput out);

}  // namespace degenjc
