#include "degenjc/steady_state.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace degenjc {

namespace {

constexpr double kSingularityFloor = 1e-12;
constexpr double kTinyStrength = 1e-14;

Complex conj_product(const SystemParams& p) { return std::conj(p.e_a() * p.e_c()); }

void require_singular_free(const SystemParams& params, const RVector& lambda_sq) {
  const Complex y0 = conj_product(params);
  const double scale = std::abs(y0);
  for (int i = 0; i < lambda_sq.size(); ++i) {
    if (std::abs(y0 - params.g0 * params.g0 * lambda_sq(i)) < kSingularityFloor * scale) {
      throw IllConditionedError("E_A* E_C* - g0^2 lambda^2 vanishes; Y is singular");
    }
  }
}

double hypot_all(std::initializer_list<double> values) {
  double s = 0.0;
  for (double v : values) s += v * v;
  return std::sqrt(s);
}

}  // namespace

void SystemParams::validate() const {
  for (double v : {g0, kappa, gamma, delta_a, delta_c, drive}) {
    if (!std::isfinite(v)) throw ParameterError("system parameters must be finite");
  }
  if (!(kappa > 0)) throw ParameterError("kappa must be > 0, got " + std::to_string(kappa));
  if (!(gamma > 0)) throw ParameterError("gamma must be > 0, got " + std::to_string(gamma));
  if (g0 < 0) throw ParameterError("g0 must be >= 0, got " + std::to_string(g0));
  if (drive < 0) throw ParameterError("drive must be >= 0, got " + std::to_string(drive));
}

XYMatrices xy_matrices(const SystemParams& params, const CouplingOperators& ops) {
  params.validate();
  const Complex y0 = conj_product(params);
  const double g2 = params.g0 * params.g0;
  const CMatrix vvd = ops.v * ops.v.adjoint();
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(vvd, Eigen::EigenvaluesOnly);
  require_singular_free(params, solver.eigenvalues());

  XYMatrices out;
  out.x = y0 * CMatrix::Identity(ops.atom.excited_dim(), ops.atom.excited_dim()) - g2 * (ops.v.adjoint() * ops.v);
  out.y = y0 * CMatrix::Identity(ops.atom.ground_dim(), ops.atom.ground_dim()) - g2 * vvd;
  return out;
}

double SteadyStateBlocks::trace() const {
  return (rho_00.trace() + rho_aa.trace() + rho_bb.trace()).real();
}

SteadyStateBlocks stationary_density(const SystemParams& params, const NaturalBasis& basis,
                                     const CouplingOperators& ops) {
  params.validate();
  if (!basis.has_pumping()) throw ParameterError("stationary_density needs a basis with pumping matrices");
  if (basis.atom.f != ops.atom.f || basis.polarization.epsilon() != ops.polarization.epsilon()) {
    throw ParameterError("natural basis and coupling operators describe different systems");
  }

  const int ng = ops.atom.ground_dim();
  const int ne = ops.atom.excited_dim();
  const CMatrix& u = basis.ground_vectors;
  const CMatrix& w = basis.excited_vectors;

  const Complex ea = params.e_a();
  const Complex y0 = conj_product(params);
  const double g = params.g0;
  const double e = params.drive;
  const double ea_sq = std::norm(ea);

  RVector lambda_sq = basis.lambdas.array().square();
  require_singular_free(params, lambda_sq);

  // B is diagonal in the excited natural basis; its bright eigenvalues repeat
  // the paired nu_i and the dark ones vanish.
  const RVector nu_b = (w.adjoint() * basis.mat_b * w).diagonal().real();

  NaturalDiagonals nd;
  nd.rho00.resize(ng);
  nd.aa.resize(ng);
  nd.bb = (e * e * g * g) * nu_b;
  CVector y(ng);
  double norm_sum = 0.0;
  double leading_sum = 0.0;
  for (int i = 0; i < ng; ++i) {
    if (basis.lambdas(i) <= kTinyStrength) throw IllConditionedError("vanishing transition strength");
    y(i) = y0 - g * g * lambda_sq(i);
    const double weight = basis.nus(i) / lambda_sq(i);
    nd.rho00(i) = std::norm(y(i)) * weight;
    nd.aa(i) = e * e * ea_sq * weight;
    norm_sum += nd.rho00(i) + nd.aa(i);
    leading_sum += nd.rho00(i);
  }
  norm_sum += nd.bb.sum();
  if (!(norm_sum > 0) || !(leading_sum > 0)) throw IllConditionedError("steady-state normalisation vanishes");

  SteadyStateBlocks out;
  out.eta = 1.0 / norm_sum;
  out.eta_leading = 1.0 / leading_sum;
  nd.rho00 *= out.eta;
  nd.aa *= out.eta;
  nd.bb *= out.eta;

  nd.zero_a.resize(ng);
  nd.zero_b.resize(ng);
  nd.ab.resize(ng);
  const Complex ab_denominator = std::conj(ea) - params.e_c();
  double strength = 0.0;
  for (int i = 0; i < ng; ++i) {
    const double lam = basis.lambdas(i);
    nd.zero_a(i) = -std::conj(ea) * e * nd.rho00(i) / y(i);
    nd.zero_b(i) = g * e * nd.rho00(i) * lam / y(i);
    nd.ab(i) = (g * (lam * nd.bb(i) - nd.aa(i) * lam) + g * e * e * nd.rho00(i) * lam / y(i)) / ab_denominator;
    if (nd.rho00(i) > 0) {
      strength = std::max(strength, (std::norm(nd.zero_a(i)) + std::norm(nd.zero_b(i))) /
                                        (nd.rho00(i) * nd.rho00(i)));
    }
  }

  CMatrix d0b = CMatrix::Zero(ng, ne);
  CMatrix dab = CMatrix::Zero(ng, ne);
  for (int i = 0; i < ng; ++i) {
    d0b(i, i) = nd.zero_b(i);
    dab(i, i) = nd.ab(i);
  }
  out.rho_00 = u * nd.rho00.cast<Complex>().asDiagonal() * u.adjoint();
  out.rho_aa = u * nd.aa.cast<Complex>().asDiagonal() * u.adjoint();
  out.rho_bb = w * nd.bb.cast<Complex>().asDiagonal() * w.adjoint();
  out.rho_0a = u * nd.zero_a.asDiagonal() * u.adjoint();
  out.rho_0b = u * d0b * w.adjoint();
  out.rho_ab = u * dab * w.adjoint();
  out.perturbation_strength = strength;
  out.natural = std::move(nd);
  return out;
}

SteadyStateBlocks stationary_density(const SystemParams& params, HalfInt f, Polarization pol) {
  const CouplingOperators ops = coupling_operator(f, pol);
  return stationary_density(params, build_natural_basis(ops), ops);
}

double TruncatedResiduals::diagonal() const { return hypot_all({bb, aa, rho00}); }
double TruncatedResiduals::off_diagonal() const { return hypot_all({ab, zero_b, zero_a}); }

TruncatedResiduals truncated_equation_residuals(const SystemParams& params, const CouplingOperators& ops,
                                                const SteadyStateBlocks& b) {
  const Complex i1(0.0, 1.0);
  const double g = params.g0;
  const double e = params.drive;
  const CMatrix& v = ops.v;
  const CMatrix vd = v.adjoint();
  const CMatrix rho_ba = b.rho_ab.adjoint();
  const CMatrix rho_a0 = b.rho_0a.adjoint();

  CMatrix refill = CMatrix::Zero(b.rho_00.rows(), b.rho_00.cols());
  for (int q = -1; q <= 1; ++q) refill += ops.d_q(q) * b.rho_bb * ops.d_q(q).adjoint();

  TruncatedResiduals r;
  r.bb = (-2 * params.gamma * b.rho_bb - i1 * g * (vd * b.rho_ab - rho_ba * v)).norm();
  r.aa = (-2 * params.kappa * b.rho_aa - i1 * g * (v * rho_ba - b.rho_ab * vd) - i1 * e * (b.rho_0a - rho_a0))
             .norm();
  r.rho00 = (2 * params.kappa * b.rho_aa + 2 * params.gamma * refill + i1 * e * (b.rho_0a - rho_a0)).norm();
  r.ab = (i1 * (std::conj(params.e_a()) - params.e_c()) * b.rho_ab - i1 * g * (v * b.rho_bb - b.rho_aa * v) -
          i1 * e * b.rho_0b)
             .norm();
  r.zero_b = (i1 * std::conj(params.e_a()) * b.rho_0b + i1 * g * b.rho_0a * v - i1 * e * b.rho_ab).norm();
  r.zero_a =
      (i1 * std::conj(params.e_c()) * b.rho_0a + i1 * g * b.rho_0b * vd + i1 * e * (b.rho_00 - b.rho_aa)).norm();
  return r;
}

}  // namespace degenjc
