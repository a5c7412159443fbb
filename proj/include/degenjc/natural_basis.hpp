#pragma once

#include "degenjc/polarization.hpp"
#include "degenjc/types.hpp"

namespace degenjc {

/// Half-width of the band around |eps| = pi/4 where the pumping-matrix
/// expansion in sin(eps)/sqrt(cos 2eps) is not evaluated.
inline constexpr double kClampWidth = 1e-6;

bool in_clamp_band(Polarization pol);

/// Morris-Shore (natural) basis of the coupling V.
///
/// V = sum_i lambdas[i] |(a)i><(b)i|, with |(a)i> the columns of
/// `ground_vectors` and |(b)i> the first 2F+1 columns of `excited_vectors`.
/// The last two excited columns span the null space of V (dark sublevels).
/// Transition strengths are sorted descending; within a degenerate cluster the
/// vectors are fixed by diagonalizing the pumping matrix and then J_z, ordered
/// by the Zeeman index of their largest component, and phased so that this
/// component is real and positive.
struct NaturalBasis {
  AtomSpec atom;
  Polarization polarization;
  RVector lambdas;
  CMatrix ground_vectors;
  CMatrix excited_vectors;

  // Populated by align_pumping / build_natural_basis.
  CMatrix mat_a;  // (2F+1)^2, Zeeman basis
  CMatrix mat_b;  // (2F+3)^2, Zeeman basis
  RVector nus;    // eigenvalues of mat_a paired with lambdas

  /// True when the circular-limit projectors replaced the expansion (clamp band).
  bool circular_limit = false;

  bool has_pumping() const { return mat_a.size() > 0; }
};

/// Singular-value decomposition of V with deterministic vector choice.
NaturalBasis decompose(const CouplingOperators& ops);

/// Ground-manifold pumping matrix, closed-form expansion in
/// t = -sin(eps)/sqrt(cos 2eps) with magnetic-number indices.
/// Throws DomainError inside the clamp band.
CMatrix matrix_a(HalfInt f, Polarization pol);

/// Excited-manifold counterpart of matrix_a.
CMatrix matrix_b(HalfInt f, Polarization pol);

/// Attach pumping matrices and re-pair degenerate clusters so that mat_a is
/// diagonal in the natural basis; fills `nus`.
NaturalBasis align_pumping(NaturalBasis basis, CMatrix mat_a, CMatrix mat_b);

/// nu_i = <(a)i| A |(a)i>. Throws PairingError if A has off-diagonal elements
/// in the natural basis above 1e-9 relative to its largest entry.
RVector nu_eigenvalues(const NaturalBasis& basis);

/// Largest off-diagonal |<(a)i|A|(a)j>| relative to max|A|.
double pumping_offdiagonal_residual(const NaturalBasis& basis);

/// Full pipeline: coupling operators, SVD, pumping matrices, alignment.
/// Inside the clamp band the exact circular-polarization basis is used with
/// A = |g,F><g,F| and B = |e,F+1><e,F+1| (only ratios of their traces matter).
NaturalBasis build_natural_basis(HalfInt f, Polarization pol);

/// Same as build_natural_basis but reuses already-built operators.
NaturalBasis build_natural_basis(const CouplingOperators& ops);

}  // namespace degenjc
