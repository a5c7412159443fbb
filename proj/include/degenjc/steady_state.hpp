#pragma once

#include "degenjc/natural_basis.hpp"

namespace degenjc {

/// Rates and detunings in angular-frequency units. drive is the pump
/// amplitude E; E/kappa is the dimensionless injected photon flux.
struct SystemParams {
  double g0 = 1.0;
  double kappa = 0.1;
  double gamma = 0.1;
  double delta_a = 0.0;
  double delta_c = 0.0;
  double drive = 1e-3;

  /// Throws ParameterError unless kappa > 0, gamma > 0, g0 >= 0, drive >= 0
  /// and all fields are finite.
  void validate() const;

  Complex e_a() const { return {delta_a, -gamma}; }
  Complex e_c() const { return {delta_c, -kappa}; }
};

struct XYMatrices {
  CMatrix x;  // E_A* E_C* I - g0^2 V^dag V, (2F+3)^2
  CMatrix y;  // E_A* E_C* I - g0^2 V V^dag, (2F+1)^2
};

/// Throws IllConditionedError if some eigenvalue E_A* E_C* - g0^2 lambda^2 is
/// below 1e-12 |E_A E_C|.
XYMatrices xy_matrices(const SystemParams& params, const CouplingOperators& ops);

/// Diagonals of the blocks in the natural basis. Ground-indexed vectors have
/// 2F+1 entries; `bb` has 2F+3 (the last two belong to the dark sublevels).
/// For the rectangular blocks only the paired (i, i) entries are nonzero.
struct NaturalDiagonals {
  RVector rho00;
  RVector aa;
  RVector bb;
  CVector zero_a;
  CVector zero_b;
  CVector ab;
};

/// Leading-order stationary state in the one-quantum manifold, partitioned
/// into |g,0> ("0"), |g,1> ("a") and |e,0> ("b"). Blocks are in the Zeeman
/// basis; rho_x0 etc. are the Hermitian conjugates. The returned matrix is
/// normalised to unit trace exactly; `eta_leading` is the closed-form
/// normalisation that drops the O(E^2) populations.
struct SteadyStateBlocks {
  CMatrix rho_00;
  CMatrix rho_aa;
  CMatrix rho_bb;
  CMatrix rho_0a;
  CMatrix rho_0b;
  CMatrix rho_ab;
  double eta = 0.0;
  double eta_leading = 0.0;
  NaturalDiagonals natural;

  /// max_i (|rho_0a|^2 + |rho_0b|^2) / rho_00^2 over natural-basis pairs,
  /// i.e. the one-photon weight relative to the ground population.
  double perturbation_strength = 0.0;
  bool weak_drive() const { return perturbation_strength <= 0.01; }

  double trace() const;
};

/// Throws ParameterError if the basis lacks pumping matrices or does not
/// match `ops`; IllConditionedError as in xy_matrices.
SteadyStateBlocks stationary_density(const SystemParams& params, const NaturalBasis& basis,
                                     const CouplingOperators& ops);

SteadyStateBlocks stationary_density(const SystemParams& params, HalfInt f, Polarization pol);

/// Frobenius norms of the right-hand sides of the truncated one-quantum
/// equations of motion evaluated at `blocks`.
struct TruncatedResiduals {
  double bb = 0.0;      // d rho_bb / dt
  double aa = 0.0;      // d rho_aa / dt
  double rho00 = 0.0;   // d rho_00 / dt
  double ab = 0.0;      // d rho_ab / dt
  double zero_b = 0.0;  // d rho_0b / dt
  double zero_a = 0.0;  // d rho_0a / dt

  double diagonal() const;
  double off_diagonal() const;
};

TruncatedResiduals truncated_equation_residuals(const SystemParams& params, const CouplingOperators& ops,
                                                const SteadyStateBlocks& blocks);

}  // namespace degenjc
