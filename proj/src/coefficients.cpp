#include "degenjc/coefficients.hpp"

#include <cmath>

namespace degenjc {

namespace {

constexpr double kMaxLegendreArgument = 1e6;

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

double legendre_argument(Polarization pol) {
  if (in_clamp_band(pol)) {
    throw DomainError("Legendre closed forms diverge near circular polarization (eps = " +
                      std::to_string(pol.epsilon()) + ")");
  }
  const double x = 1.0 / std::cos(2 * pol.epsilon());
  if (!(x <= kMaxLegendreArgument)) {
    throw DomainError("Legendre argument 1/cos(2 eps) exceeds " + std::to_string(kMaxLegendreArgument));
  }
  return x;
}

}  // namespace

double legendre_p(int l, double x) {
  if (l < 0) throw ParameterError("Legendre degree must be >= 0");
  if (l == 0) return 1.0;
  double prev = 1.0, cur = x;
  for (int n = 1; n < l; ++n) {
    const double next = ((2 * n + 1) * x * cur - n * prev) / (n + 1);
    prev = cur;
    cur = next;
  }
  return cur;
}

double legendre_weight_c(HalfInt f, int l) {
  const int two_f = f.twice();
  if (l < 0 || l > two_f) throw ParameterError("C_l requires 0 <= l <= 2F");
  return std::sqrt((2.0 * l + 1) * factorial(two_f - l) * factorial(two_f + l + 1) /
                   ((two_f + 1.0) * factorial(2 * two_f + 1)));
}

double legendre_weight_d(HalfInt f, int l) {
  const int two_f = f.twice();
  const HalfInt j = HalfInt::from_twice(2 * two_f + 2);  // 2F+1
  return std::sqrt((two_f + 3.0) * (2.0 * two_f + 3)) * clebsch_gordan(1, 0, j, 0, l, 0) *
         wigner_6j(l, 1, j, f, f + 1, f + 1);
}

AlphaCoefficients alpha_trace(const NaturalBasis& basis) {
  if (!basis.has_pumping() || basis.nus.size() != basis.lambdas.size()) {
    throw ParameterError("alpha_trace needs a natural basis with pumping matrices");
  }
  AlphaCoefficients out{0.0, 0.0, 0.0, AlphaRoute::trace};
  for (int i = 0; i < basis.lambdas.size(); ++i) {
    const double l2 = basis.lambdas(i) * basis.lambdas(i);
    if (l2 < 1e-12) throw IllConditionedError("transition strength too small for (VV^dag)^-1");
    out.alpha0 += basis.nus(i) / l2;
    out.alpha1 += basis.nus(i);
    out.alpha2 += basis.nus(i) * l2;
  }
  return out;
}

AlphaCoefficients alpha_legendre(HalfInt f, Polarization pol) {
  const double x = legendre_argument(pol);
  const int two_f = f.twice();
  AlphaCoefficients out{0.0, legendre_p(two_f + 1, x), 0.0, AlphaRoute::legendre};
  for (int l = two_f; l >= 0; l -= 2) {
    const double c = legendre_weight_c(f, l);
    out.alpha0 += c * c * legendre_p(l, x);
  }
  out.alpha0 *= x;
  for (int l = two_f; l <= two_f + 2; ++l) {
    const double d = legendre_weight_d(f, l);
    out.alpha2 += d * d * legendre_p(l, x);
  }
  out.alpha2 /= x;
  return out;
}

double alpha0_recurrence_form(HalfInt f, Polarization pol) {
  const double x = legendre_argument(pol);
  const int two_f = f.twice();
  double tail = 0.0;
  for (int l = two_f - 2; l >= 0; l -= 2) {
    const double c = legendre_weight_c(f, l);
    tail += c * c * legendre_p(l, x);
  }
  const double p_below = two_f >= 1 ? legendre_p(two_f - 1, x) : 0.0;
  return legendre_p(two_f + 1, x) + two_f / (two_f + 1.0) * p_below + x * tail;
}

double alpha2_recurrence_form(HalfInt f, Polarization pol) {
  const double x = legendre_argument(pol);
  const int two_f = f.twice();
  return legendre_p(two_f + 1, x) - two_f / (2.0 * two_f + 1) / x * legendre_p(two_f, x);
}

}  // namespace degenjc
