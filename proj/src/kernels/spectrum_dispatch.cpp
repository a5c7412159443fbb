#include <atomic>
#include <cstdlib>
#include <cstring>
#include <stdexcept>

#include "degenjc/spectrum_kernels.hpp"

namespace degenjc {

#if DEGENJC_HAVE_AVX2_KERNEL
void spectrum_kernel_avx2(const SpectrumKernelParams& p, const double* detuning, std::size_t n,
                          SpectrumKernelOutput out);
#endif

namespace {

bool cpu_has_avx2() {
#if DEGENJC_HAVE_AVX2_KERNEL && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

KernelIsa detect() {
  const char* forced = std::getenv("DEGENJC_SIMD");
  if (forced != nullptr && std::strcmp(forced, "scalar") == 0) return KernelIsa::scalar;
  return cpu_has_avx2() ? KernelIsa::avx2 : KernelIsa::scalar;
}

std::atomic<KernelIsa>& active() {
  static std::atomic<KernelIsa> isa{detect()};
  return isa;
}

}  // namespace

bool kernel_isa_available(KernelIsa isa) {
  return isa == KernelIsa::scalar || cpu_has_avx2();
}

KernelIsa active_kernel_isa() { return active().load(); }

void set_kernel_isa(KernelIsa isa) {
  if (!kernel_isa_available(isa)) throw std::invalid_argument("kernel ISA not available: " + to_string(isa));
  active().store(isa);
}

std::string to_string(KernelIsa isa) { return isa == KernelIsa::avx2 ? "avx2" : "scalar"; }

SpectrumKernel kernel_for(KernelIsa isa) {
  if (!kernel_isa_available(isa)) throw std::invalid_argument("kernel ISA not available: " + to_string(isa));
#if DEGENJC_HAVE_AVX2_KERNEL
  if (isa == KernelIsa::avx2) return &spectrum_kernel_avx2;
#endif
  return &spectrum_kernel_scalar;
}

void evaluate_spectrum(const SpectrumKernelParams& p, const double* detuning, std::size_t n,
                       SpectrumKernelOutput out) {
  kernel_for(active_kernel_isa())(p, detuning, n, out);
}

}  // namespace degenjc
