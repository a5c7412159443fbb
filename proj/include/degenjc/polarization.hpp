#pragma once

#include <array>

#include "degenjc/angular.hpp"
#include "degenjc/types.hpp"

namespace degenjc {

/// Elliptic polarization in the natural frame, where the field is a
/// superposition of the linear component e'_0 and the circular component e'_{+1}:
///
///   e = sqrt(cos 2eps) e'_0 - sqrt(2) sin(eps) e'_{+1},   -pi/4 <= eps <= pi/4.
///
/// eps = 0 is linear, eps = +-pi/4 is circular.
class Polarization {
 public:
  /// Throws ParameterError unless -pi/4 <= epsilon <= pi/4 (a 1e-12 slack is
  /// absorbed by clamping onto the endpoint).
  explicit Polarization(double epsilon);

  static Polarization linear() { return Polarization(0.0); }
  static Polarization circular() { return Polarization(kPi / 4); }

  double epsilon() const { return epsilon_; }

  /// Amplitudes (e'_{-1}, e'_0, e'_{+1}); real, unit norm.
  std::array<double, 3> components() const;

 private:
  double epsilon_;
};

/// Lower (F) and upper (F + 1) manifold of the closed F <-> F+1 transition.
struct AtomSpec {
  HalfInt f;

  explicit AtomSpec(HalfInt f_in);
  int ground_dim() const { return f.twice() + 1; }
  int excited_dim() const { return f.twice() + 3; }
  HalfInt excited_f() const { return f + 1; }
  /// Magnetic number of ground row `index` (ascending from -F).
  HalfInt ground_m(int index) const { return HalfInt::from_twice(-f.twice() + 2 * index); }
  /// Magnetic number of excited column `index` (ascending from -(F+1)).
  HalfInt excited_m(int index) const { return HalfInt::from_twice(-f.twice() - 2 + 2 * index); }
};

/// Atomic lowering operators D_q (q = -1, 0, +1) and the polarization-projected
/// coupling V = sum_q e'_q D_q. Rows are ground m_F ascending, columns excited
/// m_F' ascending.
struct CouplingOperators {
  AtomSpec atom;
  Polarization polarization;
  std::array<CMatrix, 3> d;  // indexed by q + 1
  CMatrix v;

  const CMatrix& d_q(int q) const { return d.at(static_cast<std::size_t>(q + 1)); }
};

/// D_q with entries C^{F+1, m'}_{F m 1 q}; nonzero only where m' = m + q.
CMatrix lowering_operator(HalfInt f, int q);

CouplingOperators coupling_operator(HalfInt f, Polarization pol);

}  // namespace degenjc
