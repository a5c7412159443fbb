#include "degenjc/oracle.hpp"

#include <cmath>
#include <complex>

#include <Eigen/LU>
#include <Eigen/SVD>
#include <unsupported/Eigen/KroneckerProduct>

namespace degenjc {

namespace {

constexpr int kRefinementSteps = 5;
constexpr int kInverseIterations = 30;
constexpr double kUniquenessThreshold = 1e-10;
constexpr int kSvdFallbackLimit = 2500;

using LongComplex = std::complex<long double>;

// b - M x accumulated in extended precision.
CVector extended_residual(const CMatrix& m, const CVector& x, const CVector& b) {
  const Eigen::Index n = m.rows();
  std::vector<LongComplex> acc(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) acc[static_cast<std::size_t>(i)] = LongComplex(b(i).real(), b(i).imag());
  for (Eigen::Index j = 0; j < n; ++j) {
    const LongComplex xj(x(j).real(), x(j).imag());
    const Complex* col = m.col(j).data();
    for (Eigen::Index i = 0; i < n; ++i) {
      acc[static_cast<std::size_t>(i)] -= LongComplex(col[i].real(), col[i].imag()) * xj;
    }
  }
  CVector r(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& a = acc[static_cast<std::size_t>(i)];
    r(i) = Complex(static_cast<double>(a.real()), static_cast<double>(a.imag()));
  }
  return r;
}

// sigma_min(M) = 1/||M^-1||_2 by power iteration on (M M^dag)^-1.
double smallest_singular_value(const Eigen::PartialPivLU<CMatrix>& lu, Eigen::Index n) {
  CVector v = CVector::Ones(n) / std::sqrt(static_cast<double>(n));
  double growth = 0.0;
  for (int it = 0; it < kInverseIterations; ++it) {
    const CVector w = lu.solve(v);
    const CVector z = lu.adjoint().solve(w);
    const double nz = z.norm();
    if (!std::isfinite(nz) || nz == 0.0) return 0.0;
    growth = nz;
    v = z / nz;
  }
  return 1.0 / std::sqrt(growth);
}

CMatrix finalize(CVector vec, int dim) {
  CMatrix rho = Eigen::Map<CMatrix>(vec.data(), dim, dim);
  rho = (0.5 * (rho + rho.adjoint())).eval();
  const Complex tr = rho.trace();
  if (std::abs(tr) == 0.0) throw IllConditionedError("steady state has zero trace");
  rho /= tr.real();
  return rho;
}

bool in_one_quantum(const TruncatedHilbert& s, int index) {
  const int level = index / (s.n_max + 1);
  const int n = index % (s.n_max + 1);
  const bool ground = level < s.f.twice() + 1;
  return n == 0 || (ground && n == 1);
}

double relative_error(const CMatrix& analytic, const CMatrix& numeric) {
  return (analytic - numeric).norm() / std::max(analytic.norm(), 1e-15);
}

}  // namespace

TruncatedHilbert::TruncatedHilbert(HalfInt f_in, int n_max_in) : f(f_in), n_max(n_max_in) {
  if (f.twice() < 0) throw ParameterError("F must be >= 0");
  if (n_max < 1) throw ParameterError("photon cutoff n_max must be >= 1");
  if (dim() > kMaxOracleDim) {
    throw ParameterError("oracle Hilbert space too large (dim " + std::to_string(dim()) + " > " +
                         std::to_string(kMaxOracleDim) + "); reduce F or n_max");
  }
}

CMatrix annihilation_full(const TruncatedHilbert& space) {
  const int nf = space.n_max + 1;
  CMatrix a = CMatrix::Zero(nf, nf);
  for (int n = 1; n < nf; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return Eigen::kroneckerProduct(CMatrix::Identity(space.levels(), space.levels()), a).eval();
}

CMatrix atomic_full(const TruncatedHilbert& space, const CMatrix& atomic) {
  const int nf = space.n_max + 1;
  return Eigen::kroneckerProduct(atomic, CMatrix::Identity(nf, nf)).eval();
}

CMatrix lowering_atomic(const TruncatedHilbert& space, const CMatrix& ground_excited) {
  const int ng = space.f.twice() + 1;
  CMatrix op = CMatrix::Zero(space.levels(), space.levels());
  op.block(0, ng, ng, space.levels() - ng) = ground_excited;
  return op;
}

CMatrix hamiltonian_full(const SystemParams& params, const CouplingOperators& ops, const TruncatedHilbert& space) {
  params.validate();
  if (ops.atom.f != space.f) throw ParameterError("coupling operators and Hilbert space disagree on F");
  const int ng = space.f.twice() + 1;
  const CMatrix a = annihilation_full(space);
  const CMatrix ad = a.adjoint();
  CMatrix excited = CMatrix::Zero(space.levels(), space.levels());
  excited.bottomRightCorner(space.levels() - ng, space.levels() - ng).setIdentity();
  const CMatrix v = atomic_full(space, lowering_atomic(space, ops.v));

  CMatrix h = params.delta_c * (ad * a) + params.delta_a * atomic_full(space, excited);
  h += params.g0 * (v * ad + v.adjoint() * a);
  h += params.drive * (a + ad);
  return h;
}

CMatrix liouvillian(const SystemParams& params, const CouplingOperators& ops, const TruncatedHilbert& space) {
  const int dim = space.dim();
  const CMatrix h = hamiltonian_full(params, ops, space);
  const CMatrix id = CMatrix::Identity(dim, dim);
  const Complex i1(0.0, 1.0);

  CMatrix l = -i1 * (Eigen::kroneckerProduct(id, h).eval() - Eigen::kroneckerProduct(h.transpose(), id).eval());

  auto dissipate = [&](const CMatrix& c, double rate) {
    const CMatrix cdc = c.adjoint() * c;
    l += rate * (2.0 * Eigen::kroneckerProduct(c.conjugate(), c).eval() - Eigen::kroneckerProduct(id, cdc).eval() -
                 Eigen::kroneckerProduct(cdc.transpose(), id).eval());
  };
  dissipate(annihilation_full(space), params.kappa);
  for (int q = -1; q <= 1; ++q) dissipate(atomic_full(space, lowering_atomic(space, ops.d_q(q))), params.gamma);
  return l;
}

OracleSteadyState numerical_steady_state(const SystemParams& params, const CouplingOperators& ops,
                                         const TruncatedHilbert& space) {
  const int dim = space.dim();
  const Eigen::Index n = static_cast<Eigen::Index>(dim) * dim;
  const CMatrix l = liouvillian(params, ops, space);

  // Replace the first equation by the trace condition; the rows of L are
  // linearly dependent (trace preservation) so no information is lost.
  CMatrix m = l;
  m.row(0).setZero();
  for (int k = 0; k < dim; ++k) m(0, k + static_cast<Eigen::Index>(k) * dim) = 1.0;
  CVector b = CVector::Zero(n);
  b(0) = 1.0;

  const double scale = m.cwiseAbs().maxCoeff();
  Eigen::PartialPivLU<CMatrix> lu(m);
  OracleSteadyState out;
  out.sigma_min = smallest_singular_value(lu, n) / scale;
  out.unique = out.sigma_min >= kUniquenessThreshold;

  CVector x;
  if (out.unique) {
    x = lu.solve(b);
    for (int it = 0; it < kRefinementSteps; ++it) x += lu.solve(extended_residual(m, x, b));
  } else {
    if (n > kSvdFallbackLimit) {
      throw IllConditionedError("steady state is not unique (relative sigma_min " + std::to_string(out.sigma_min) +
                                ") and the system is too large for the SVD fallback");
    }
    Eigen::BDCSVD<CMatrix> svd(l, Eigen::ComputeFullV);
    const RVector& s = svd.singularValues();
    const double cutoff = kUniquenessThreshold * s(0);
    Eigen::Index nullity = 0;
    for (Eigen::Index k = 0; k < s.size(); ++k) nullity += s(k) <= cutoff ? 1 : 0;
    const CMatrix basis = svd.matrixV().rightCols(nullity);
    CVector identity = CVector::Zero(n);
    for (int k = 0; k < dim; ++k) identity(k + static_cast<Eigen::Index>(k) * dim) = 1.0;
    x = basis * (basis.adjoint() * identity);
  }

  out.rho = finalize(std::move(x), dim);
  out.residual = liouvillian_residual(l, out.rho, space, false);
  return out;
}

CMatrix embed_blocks(const SteadyStateBlocks& blocks, const TruncatedHilbert& space) {
  const int ng = space.f.twice() + 1;
  const int ne = ng + 2;
  if (blocks.rho_00.rows() != ng || blocks.rho_bb.rows() != ne) {
    throw ParameterError("block dimensions do not match the Hilbert space");
  }
  CMatrix rho = CMatrix::Zero(space.dim(), space.dim());
  auto put = [&](int r, int c, Complex value) {
    rho(r, c) = value;
    if (r != c) rho(c, r) = std::conj(value);
  };
  for (int i = 0; i < ng; ++i) {
    for (int j = 0; j < ng; ++j) {
      rho(space.ground_index(i, 0), space.ground_index(j, 0)) = blocks.rho_00(i, j);
      rho(space.ground_index(i, 1), space.ground_index(j, 1)) = blocks.rho_aa(i, j);
      put(space.ground_index(i, 0), space.ground_index(j, 1), blocks.rho_0a(i, j));
    }
    for (int j = 0; j < ne; ++j) {
      put(space.ground_index(i, 0), space.excited_index(j, 0), blocks.rho_0b(i, j));
      put(space.ground_index(i, 1), space.excited_index(j, 0), blocks.rho_ab(i, j));
    }
  }
  for (int i = 0; i < ne; ++i) {
    for (int j = 0; j < ne; ++j) rho(space.excited_index(i, 0), space.excited_index(j, 0)) = blocks.rho_bb(i, j);
  }
  return rho;
}

SteadyStateBlocks extract_blocks(const CMatrix& rho, const TruncatedHilbert& space) {
  if (rho.rows() != space.dim() || rho.cols() != space.dim()) {
    throw ParameterError("density matrix dimension does not match the Hilbert space");
  }
  const int ng = space.f.twice() + 1;
  const int ne = ng + 2;
  SteadyStateBlocks b;
  b.rho_00.resize(ng, ng);
  b.rho_aa.resize(ng, ng);
  b.rho_0a.resize(ng, ng);
  b.rho_bb.resize(ne, ne);
  b.rho_0b.resize(ng, ne);
  b.rho_ab.resize(ng, ne);
  for (int i = 0; i < ng; ++i) {
    for (int j = 0; j < ng; ++j) {
      b.rho_00(i, j) = rho(space.ground_index(i, 0), space.ground_index(j, 0));
      b.rho_aa(i, j) = rho(space.ground_index(i, 1), space.ground_index(j, 1));
      b.rho_0a(i, j) = rho(space.ground_index(i, 0), space.ground_index(j, 1));
    }
    for (int j = 0; j < ne; ++j) {
      b.rho_0b(i, j) = rho(space.ground_index(i, 0), space.excited_index(j, 0));
      b.rho_ab(i, j) = rho(space.ground_index(i, 1), space.excited_index(j, 0));
    }
  }
  for (int i = 0; i < ne; ++i) {
    for (int j = 0; j < ne; ++j) b.rho_bb(i, j) = rho(space.excited_index(i, 0), space.excited_index(j, 0));
  }
  return b;
}

double liouvillian_residual(const CMatrix& superop, const CMatrix& rho, const TruncatedHilbert& space,
                            bool one_quantum_only) {
  const int dim = space.dim();
  if (rho.rows() != dim || superop.rows() != static_cast<Eigen::Index>(dim) * dim) {
    throw ParameterError("residual: dimension mismatch");
  }
  const CVector vec = Eigen::Map<const CVector>(rho.data(), rho.size());
  const CVector out = superop * vec;
  if (!one_quantum_only) return out.norm();
  double sum = 0.0;
  for (int c = 0; c < dim; ++c) {
    if (!in_one_quantum(space, c)) continue;
    for (int r = 0; r < dim; ++r) {
      if (in_one_quantum(space, r)) sum += std::norm(out(r + static_cast<Eigen::Index>(c) * dim));
    }
  }
  return std::sqrt(sum);
}

double BlockComparison::max_error() const { return std::max({rho00, aa, bb, zero_a, zero_b, ab}); }

BlockComparison compare_blocks(const SteadyStateBlocks& analytic, const CMatrix& numeric,
                               const TruncatedHilbert& space) {
  const SteadyStateBlocks n = extract_blocks(numeric, space);
  if (analytic.rho_00.rows() != n.rho_00.rows() || analytic.rho_bb.rows() != n.rho_bb.rows()) {
    throw ParameterError("analytic blocks do not match the Hilbert space");
  }
  BlockComparison c;
  c.rho00 = relative_error(analytic.rho_00, n.rho_00);
  c.aa = relative_error(analytic.rho_aa, n.rho_aa);
  c.bb = relative_error(analytic.rho_bb, n.rho_bb);
  c.zero_a = relative_error(analytic.rho_0a, n.rho_0a);
  c.zero_b = relative_error(analytic.rho_0b, n.rho_0b);
  c.ab = relative_error(analytic.rho_ab, n.rho_ab);
  c.numeric_trace = numeric.trace().real();
  c.hermiticity = (numeric - numeric.adjoint()).norm();
  return c;
}

OracleObservables oracle_observables(const CMatrix& rho, const TruncatedHilbert& space) {
  if (rho.rows() != space.dim()) throw ParameterError("density matrix dimension does not match the Hilbert space");
  const int ng = space.f.twice() + 1;
  OracleObservables o;
  for (int k = 0; k < space.dim(); ++k) {
    const int level = k / (space.n_max + 1);
    const int n = k % (space.n_max + 1);
    const double p = rho(k, k).real();
    o.photons += n * p;
    if (level >= ng) o.excited += p;
    if (n >= 2) o.two_photon += p;
  }
  return o;
}

}  // namespace degenjc
