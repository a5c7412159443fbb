#include "degenjc/natural_basis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace degenjc {

namespace {

constexpr double kClusterTolerance = 1e-10;
constexpr double kNuTolerance = 1e-9;

// ---------------------------------------------------------------------------
// Pumping-matrix expansion.
//
// Every entry of A (and B) is a polynomial in t = -sin(eps)/sqrt(cos 2eps):
//
//   A_ij = sum_k w(i,j,k) C^{2F+1, i-k}_{F i, F+1 -k} C^{2F+1, j-k}_{F j, F+1 -k} t^{i+j-2k}
//   w    = 1/((i-k)!(j-k)!) sqrt((2F+1+i-k)!(2F+1+j-k)! / ((2F+1-i+k)!(2F+1-j+k)!))
//
// with i, j magnetic numbers of the manifold and k running in integer steps
// from -F-1 (A) or -F (B) up to min(i, j). The angular factors are
// eps-independent, so the coefficients are tabulated once per F.
// ---------------------------------------------------------------------------

struct PolynomialMatrix {
  int dim = 0;
  int max_degree = 0;
  std::vector<std::vector<double>> coeffs;  // [row * dim + col][power]

  CMatrix evaluate(double t) const {
    CMatrix out = CMatrix::Zero(dim, dim);
    for (int r = 0; r < dim; ++r) {
      for (int c = 0; c < dim; ++c) {
        const auto& p = coeffs[static_cast<std::size_t>(r * dim + c)];
        double acc = 0.0;
        for (int n = static_cast<int>(p.size()) - 1; n >= 0; --n) acc = acc * t + p[n];
        out(r, c) = acc;
      }
    }
    return out;
  }
};

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

// `upper` selects the excited-manifold matrix B.
PolynomialMatrix tabulate_pumping(HalfInt f, bool upper) {
  const AtomSpec atom(f);
  const HalfInt j_row = upper ? atom.excited_f() : f;     // first CG angular momentum
  const HalfInt j_sum = upper ? f : atom.excited_f();     // second CG angular momentum
  const HalfInt j_total = HalfInt::from_twice(2 * f.twice() + 2);  // 2F+1
  const int dim = upper ? atom.excited_dim() : atom.ground_dim();
  const int two_f_plus_1 = f.twice() + 1;  // integral for every F
  // k starts at -F-1 for A and -F for B.
  const HalfInt k_start = upper ? -f : -(f + 1);

  PolynomialMatrix poly;
  poly.dim = dim;
  poly.coeffs.resize(static_cast<std::size_t>(dim * dim));

  auto m_of = [&](int index) {
    return upper ? atom.excited_m(index) : atom.ground_m(index);
  };

  for (int r = 0; r < dim; ++r) {
    const HalfInt i = m_of(r);
    for (int c = 0; c < dim; ++c) {
      auto& p = poly.coeffs[static_cast<std::size_t>(r * dim + c)];
      if (c < r) {  // the sum is symmetric in (i, j); mirror so the matrix is exactly Hermitian
        p = poly.coeffs[static_cast<std::size_t>(c * dim + r)];
        continue;
      }
      const HalfInt j = m_of(c);
      const HalfInt k_stop = std::min(i, j);
      for (HalfInt k = k_start; k <= k_stop; k += 1) {
        const int ik = (i - k).twice() / 2;
        const int jk = (j - k).twice() / 2;
        if (ik < 0 || jk < 0) continue;
        const int up_i = two_f_plus_1 + ik, up_j = two_f_plus_1 + jk;
        const int dn_i = two_f_plus_1 - ik, dn_j = two_f_plus_1 - jk;
        if (dn_i < 0 || dn_j < 0) continue;  // negative factorial terminates the term
        const double cg_i = clebsch_gordan(j_row, i, j_sum, -k, j_total, i - k);
        const double cg_j = clebsch_gordan(j_row, j, j_sum, -k, j_total, j - k);
        if (cg_i == 0.0 || cg_j == 0.0) continue;
        const double weight = std::sqrt(factorial(up_i) * factorial(up_j) /
                                        (factorial(dn_i) * factorial(dn_j))) /
                              (factorial(ik) * factorial(jk));
        const int power = ik + jk;
        if (static_cast<int>(p.size()) <= power) p.resize(static_cast<std::size_t>(power + 1), 0.0);
        p[static_cast<std::size_t>(power)] += weight * cg_i * cg_j;
        poly.max_degree = std::max(poly.max_degree, power);
      }
    }
  }
  return poly;
}

const PolynomialMatrix& cached_pumping(HalfInt f, bool upper) {
  static std::mutex mutex;
  static std::map<std::pair<int, bool>, PolynomialMatrix> cache;
  std::lock_guard<std::mutex> lock(mutex);
  const auto key = std::make_pair(f.twice(), upper);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, tabulate_pumping(f, upper)).first;
  return it->second;
}

double expansion_variable(Polarization pol) {
  if (in_clamp_band(pol)) {
    throw DomainError("pumping-matrix expansion diverges within " + std::to_string(kClampWidth) +
                      " rad of circular polarization (eps = " + std::to_string(pol.epsilon()) + ")");
  }
  const double eps = pol.epsilon();
  return -std::sin(eps) / std::sqrt(std::cos(2 * eps));
}

// ---------------------------------------------------------------------------
// Degenerate-subspace canonicalization.
// ---------------------------------------------------------------------------

using Cluster = std::pair<int, int>;  // [begin, end)

std::vector<Cluster> clusters_of(const RVector& values, double tol) {
  std::vector<Cluster> out;
  int begin = 0;
  for (int i = 1; i <= values.size(); ++i) {
    if (i == values.size() || std::abs(values(i) - values(i - 1)) > tol) {
      out.emplace_back(begin, i);
      begin = i;
    }
  }
  return out;
}

int dominant_index(const CVector& v) {
  int best = 0;
  double best_abs = -1.0;
  for (int k = 0; k < v.size(); ++k) {
    // Earliest index wins among (near-)equal magnitudes.
    if (std::abs(v(k)) > best_abs * (1.0 + 1e-12) + 1e-300) {
      best_abs = std::abs(v(k));
      best = k;
    }
  }
  return best;
}

void fix_phase(Eigen::Ref<CVector> v) {
  const Complex lead = v(dominant_index(v));
  if (std::abs(lead) > 0.0) v *= std::conj(lead) / std::abs(lead);
}

CMatrix jz_operator(int dim) {
  CMatrix jz = CMatrix::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) jz(k, k) = 0.5 * (2 * k - (dim - 1));
  return jz;
}

// Rotate the orthonormal columns `block` so that each operator in `ops`, in
// priority order, becomes diagonal on the span; later operators only split
// subspaces the earlier ones left degenerate.
CMatrix canonical_rotation(const CMatrix& block, const std::vector<const CMatrix*>& ops, std::size_t level = 0) {
  if (block.cols() <= 1 || level >= ops.size()) return block;
  const CMatrix restricted = block.adjoint() * (*ops[level]) * block;
  const CMatrix hermitian = 0.5 * (restricted + restricted.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(hermitian);
  const CMatrix rotated = block * eig.eigenvectors();
  const RVector& ev = eig.eigenvalues();
  const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());

  CMatrix out(block.rows(), block.cols());
  for (const auto& [b, e] : clusters_of(ev, 1e-10 * scale)) {
    out.middleCols(b, e - b) = canonical_rotation(rotated.middleCols(b, e - b), ops, level + 1);
  }
  return out;
}

// Sort columns by dominant Zeeman index, then phase-fix each.
void order_and_phase(Eigen::Ref<CMatrix> block) {
  std::vector<int> order(static_cast<std::size_t>(block.cols()));
  std::iota(order.begin(), order.end(), 0);
  std::vector<int> key(order.size());
  for (int c = 0; c < block.cols(); ++c) key[static_cast<std::size_t>(c)] = dominant_index(block.col(c));
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return key[static_cast<std::size_t>(a)] < key[static_cast<std::size_t>(b)];
  });
  const CMatrix copy = block;
  for (int c = 0; c < block.cols(); ++c) {
    block.col(c) = copy.col(order[static_cast<std::size_t>(c)]);
    fix_phase(block.col(c));
  }
}

// Canonicalize ground clusters against `ground_ops`, rebuild paired excited
// vectors as V^dag u / lambda, and canonicalize the dark subspace.
void canonicalize(NaturalBasis& basis, const CMatrix& v, const std::vector<const CMatrix*>& ground_ops,
                  const std::vector<const CMatrix*>& dark_ops) {
  const int ng = basis.atom.ground_dim();
  const int ne = basis.atom.excited_dim();

  for (const auto& [b, e] : clusters_of(basis.lambdas, kClusterTolerance)) {
    auto block = basis.ground_vectors.middleCols(b, e - b);
    if (e - b > 1) block = canonical_rotation(block, ground_ops);
    order_and_phase(block);
  }

  CMatrix excited(ne, ne);
  for (int i = 0; i < ng; ++i) {
    if (basis.lambdas(i) <= 1e-14) {
      throw IllConditionedError("vanishing transition strength in the natural basis");
    }
    excited.col(i) = v.adjoint() * basis.ground_vectors.col(i) / basis.lambdas(i);
  }
  CMatrix dark = basis.excited_vectors.rightCols(ne - ng);
  dark = canonical_rotation(dark, dark_ops);
  order_and_phase(dark);
  excited.rightCols(ne - ng) = dark;
  basis.excited_vectors = std::move(excited);
}

}  // namespace

bool in_clamp_band(Polarization pol) { return std::abs(pol.epsilon()) > kPi / 4 - kClampWidth; }

NaturalBasis decompose(const CouplingOperators& ops) {
  Eigen::JacobiSVD<CMatrix> svd(ops.v, Eigen::ComputeFullU | Eigen::ComputeFullV);
  NaturalBasis basis{ops.atom, ops.polarization, svd.singularValues(), svd.matrixU(), svd.matrixV(),
                     {}, {}, {}, false};

  const CMatrix jz_g = jz_operator(ops.atom.ground_dim());
  const CMatrix jz_e = jz_operator(ops.atom.excited_dim());
  canonicalize(basis, ops.v, {&jz_g}, {&jz_e});
  return basis;
}

CMatrix matrix_a(HalfInt f, Polarization pol) {
  return cached_pumping(f, false).evaluate(expansion_variable(pol));
}

CMatrix matrix_b(HalfInt f, Polarization pol) {
  return cached_pumping(f, true).evaluate(expansion_variable(pol));
}

NaturalBasis align_pumping(NaturalBasis basis, CMatrix mat_a, CMatrix mat_b) {
  const int ng = basis.atom.ground_dim();
  const int ne = basis.atom.excited_dim();
  if (mat_a.rows() != ng || mat_a.cols() != ng || mat_b.rows() != ne || mat_b.cols() != ne) {
    throw ParameterError("pumping matrix dimensions do not match the atom");
  }
  basis.mat_a = std::move(mat_a);
  basis.mat_b = std::move(mat_b);

  // V is recovered from the current pairing; it is unchanged by the rotations.
  CMatrix v = CMatrix::Zero(ng, ne);
  for (int i = 0; i < ng; ++i) {
    v += basis.lambdas(i) * basis.ground_vectors.col(i) * basis.excited_vectors.col(i).adjoint();
  }
  const CMatrix jz_g = jz_operator(ng);
  const CMatrix jz_e = jz_operator(ne);
  canonicalize(basis, v, {&basis.mat_a, &jz_g}, {&basis.mat_b, &jz_e});
  basis.nus = nu_eigenvalues(basis);
  return basis;
}

double pumping_offdiagonal_residual(const NaturalBasis& basis) {
  if (!basis.has_pumping()) throw ParameterError("natural basis has no pumping matrices attached");
  const CMatrix in_basis = basis.ground_vectors.adjoint() * basis.mat_a * basis.ground_vectors;
  const double scale = std::max(basis.mat_a.cwiseAbs().maxCoeff(), 1e-300);
  double worst = 0.0;
  for (int r = 0; r < in_basis.rows(); ++r) {
    for (int c = 0; c < in_basis.cols(); ++c) {
      if (r != c) worst = std::max(worst, std::abs(in_basis(r, c)));
    }
  }
  return worst / scale;
}

RVector nu_eigenvalues(const NaturalBasis& basis) {
  const double residual = pumping_offdiagonal_residual(basis);
  if (residual > kNuTolerance) {
    throw PairingError("pumping matrix not diagonal in the natural basis (relative residual " +
                       std::to_string(residual * 1e9) + "e-9 at F = " + basis.atom.f.to_string() + ", eps = " + std::to_string(basis.polarization.epsilon()) + ")");
  }
  const int ng = basis.atom.ground_dim();
  RVector nus(ng);
  for (int i = 0; i < ng; ++i) {
    const CVector& u = basis.ground_vectors.col(i);
    nus(i) = (u.adjoint() * basis.mat_a * u)(0, 0).real();
  }
  return nus;
}

NaturalBasis build_natural_basis(const CouplingOperators& ops) {
  if (in_clamp_band(ops.polarization)) return build_natural_basis(ops.atom.f, ops.polarization);
  NaturalBasis basis = decompose(ops);
  return align_pumping(std::move(basis), matrix_a(ops.atom.f, ops.polarization),
                       matrix_b(ops.atom.f, ops.polarization));
}

NaturalBasis build_natural_basis(HalfInt f, Polarization pol) {
  if (!in_clamp_band(pol)) return build_natural_basis(coupling_operator(f, pol));

  // Both ends of the interval select the e'_{+1} component, pumping into the
  // stretched pair |g,F> <-> |e,F+1>.
  const Polarization circular(pol.epsilon() > 0 ? kPi / 4 : -kPi / 4);
  const CouplingOperators ops = coupling_operator(f, circular);
  NaturalBasis basis = decompose(ops);
  const int ng = ops.atom.ground_dim();
  const int ne = ops.atom.excited_dim();
  CMatrix a = CMatrix::Zero(ng, ng);
  CMatrix b = CMatrix::Zero(ne, ne);
  a(ng - 1, ng - 1) = 1.0;
  b(ne - 1, ne - 1) = 1.0;
  basis = align_pumping(std::move(basis), std::move(a), std::move(b));
  basis.circular_limit = true;
  return basis;
}

}  // namespace degenjc
