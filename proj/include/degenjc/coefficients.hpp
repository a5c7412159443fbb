#pragma once

#include "degenjc/natural_basis.hpp"

namespace degenjc {

enum class AlphaRoute { trace, legendre };

/// alpha0 = Tr[(VV^dag)^-1 A], alpha1 = Tr[A] = Tr[B], alpha2 = Tr[VV^dag A].
///
/// They share the (arbitrary) scale of the pumping matrices; only the ratios
/// alpha1/alpha0 and alpha2/alpha0 enter observable quantities.
struct AlphaCoefficients {
  double alpha0 = 1.0;
  double alpha1 = 1.0;
  double alpha2 = 1.0;
  AlphaRoute route = AlphaRoute::trace;

  double ratio1() const { return alpha1 / alpha0; }
  double ratio2() const { return alpha2 / alpha0; }
};

/// Natural-basis sums alpha0 = sum nu/lambda^2, alpha1 = sum nu,
/// alpha2 = sum nu lambda^2. Finite everywhere, including the clamp band
/// (where all three equal 1). Throws IllConditionedError if some
/// lambda^2 < 1e-12, ParameterError if the basis has no pumping matrices.
AlphaCoefficients alpha_trace(const NaturalBasis& basis);

/// Closed forms in Legendre polynomials of x = 1/cos 2eps:
///   alpha0 = x   sum_{l = 2F, 2F-2, ... >= 0} C_l^2 P_l(x)
///   alpha1 =     P_{2F+1}(x)
///   alpha2 = 1/x sum_{l = 2F}^{2F+2} D_l^2 P_l(x)
/// For integral F the alpha0 sum is the usual even-l sum l = 0, 2, ..., 2F.
/// Throws DomainError inside the clamp band or when x > 1e6.
AlphaCoefficients alpha_legendre(HalfInt f, Polarization pol);

/// P_l(x) by upward three-term recurrence.
double legendre_p(int l, double x);

/// C_l = sqrt((2l+1)(2F-l)!(2F+l+1)! / ((2F+1)(4F+1)!)), 0 <= l <= 2F.
double legendre_weight_c(HalfInt f, int l);

/// D_l = sqrt((2F+3)(4F+3)) C^{l0}_{10, 2F+1 0} {l 1 2F+1; F F+1 F+1}.
double legendre_weight_d(HalfInt f, int l);

/// alpha0 rewritten with the Legendre recurrence:
///   alpha1 + 2F/(2F+1) P_{2F-1}(x) + x sum_{l = 2F-2, 2F-4, ... >= 0} C_l^2 P_l(x).
double alpha0_recurrence_form(HalfInt f, Polarization pol);

/// alpha2 rewritten with the Legendre recurrence:
///   alpha1 - 2F cos(2eps)/(4F+1) P_{2F}(x).
double alpha2_recurrence_form(HalfInt f, Polarization pol);

}  // namespace degenjc
