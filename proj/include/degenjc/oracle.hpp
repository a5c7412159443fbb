#pragma once

// Brute-force reference: the full Lindblad master equation in a truncated
// Fock space, solved densely. Only meant for small systems (dim <= 48).
//
// Basis states are (atomic level, photon number) in lexicographic order with
// the 2F+1 ground levels first, then the 2F+3 excited levels:
//   index = level * (n_max + 1) + n.
// Superoperators act on column-stacked density matrices,
//   vec(A rho B) = (B^T (x) A) vec(rho).

#include "degenjc/steady_state.hpp"

namespace degenjc {

struct TruncatedHilbert {
  HalfInt f;
  int n_max = 2;

  /// Throws ParameterError if n_max < 1 or dim exceeds kMaxOracleDim.
  TruncatedHilbert(HalfInt f_in, int n_max_in);

  int levels() const { return 2 * f.twice() + 4; }
  int dim() const { return levels() * (n_max + 1); }
  int ground_index(int m_index, int n) const { return m_index * (n_max + 1) + n; }
  int excited_index(int m_index, int n) const { return (f.twice() + 1 + m_index) * (n_max + 1) + n; }
};

/// Largest Hilbert-space dimension the dense oracle accepts (F = 3 at
/// n_max = 2, F = 2 at n_max = 3).
inline constexpr int kMaxOracleDim = 48;

/// Photon annihilation operator on the full space.
CMatrix annihilation_full(const TruncatedHilbert& space);

/// Atomic operator (levels x levels, ground block first) tensored with the
/// photon identity.
CMatrix atomic_full(const TruncatedHilbert& space, const CMatrix& atomic);

/// D_q or V (ground x excited) lifted to the full atomic space.
CMatrix lowering_atomic(const TruncatedHilbert& space, const CMatrix& ground_excited);

/// H = Delta_C a^dag a + Delta_A P_e + g0 (V a^dag + V^dag a) + E (a + a^dag).
CMatrix hamiltonian_full(const SystemParams& params, const CouplingOperators& ops, const TruncatedHilbert& space);

/// Dense Liouvillian with cavity decay kappa on a and atomic decay gamma on
/// each of the three D_q.
CMatrix liouvillian(const SystemParams& params, const CouplingOperators& ops, const TruncatedHilbert& space);

struct OracleSteadyState {
  CMatrix rho;
  bool unique = true;
  /// Smallest singular value of the trace-bordered Liouvillian relative to
  /// its largest absolute entry.
  double sigma_min = 0.0;
  /// ||L vec(rho)||_2 after cleanup.
  double residual = 0.0;
};

/// Null vector of L with unit trace: trace-bordered LU with iterative
/// refinement in extended precision. When the bordered system is singular
/// (relative sigma_min < 1e-10) the steady state is not unique; small systems
/// (dim^2 <= 2500) then fall back to an SVD null space and return the
/// projection of the identity onto it with unique = false; larger ones throw
/// IllConditionedError.
OracleSteadyState numerical_steady_state(const SystemParams& params, const CouplingOperators& ops,
                                         const TruncatedHilbert& space);

/// Place the one-quantum blocks into a full density matrix (zero elsewhere).
CMatrix embed_blocks(const SteadyStateBlocks& blocks, const TruncatedHilbert& space);

/// Read the one-quantum blocks back out of a full density matrix (eta fields
/// and natural diagonals are left empty).
SteadyStateBlocks extract_blocks(const CMatrix& rho, const TruncatedHilbert& space);

/// ||L vec(rho)||_2, optionally restricted to entries whose row and column
/// both lie in the one-quantum manifold {|g,0>, |g,1>, |e,0>}.
double liouvillian_residual(const CMatrix& superop, const CMatrix& rho, const TruncatedHilbert& space,
                            bool one_quantum_only);

struct BlockComparison {
  double rho00 = 0.0;
  double aa = 0.0;
  double bb = 0.0;
  double zero_a = 0.0;
  double zero_b = 0.0;
  double ab = 0.0;
  double numeric_trace = 0.0;
  double hermiticity = 0.0;  // ||rho - rho^dag||_F of the numeric state

  double max_error() const;
};

/// Relative Frobenius error per block, ||analytic - numeric|| / max(||analytic||, 1e-15).
/// Throws ParameterError if the block shapes do not match the space.
BlockComparison compare_blocks(const SteadyStateBlocks& analytic, const CMatrix& numeric,
                               const TruncatedHilbert& space);

struct OracleObservables {
  double photons = 0.0;   // Tr[a^dag a rho]
  double excited = 0.0;   // Tr[sum_q D_q^dag D_q rho]
  double two_photon = 0.0;  // population with n >= 2
};

OracleObservables oracle_observables(const CMatrix& rho, const TruncatedHilbert& space);

}  // namespace degenjc
