#include <doctest.h>

#include <cmath>

#include <Eigen/Eigenvalues>

#include "degenjc/coefficients.hpp"
#include "degenjc/spectra.hpp"
#include "degenjc/steady_state.hpp"
#include "reference.hpp"

using namespace degenjc;

namespace {

double offdiag(CMatrix m) {
  m.diagonal().setZero();
  return m.cwiseAbs().maxCoeff();
}

struct Case {
  CouplingOperators ops;
  NaturalBasis basis;
};

Case make_case(HalfInt f, double eps) {
  CouplingOperators ops = coupling_operator(f, Polarization(eps));
  NaturalBasis basis = build_natural_basis(ops);
  return {std::move(ops), std::move(basis)};
}

}  // namespace

TEST_CASE("parameter validation") {
  SystemParams p;
  CHECK_NOTHROW(p.validate());
  p.kappa = 0.0;
  CHECK_THROWS_AS(p.validate(), ParameterError);
  p = SystemParams{};
  p.gamma = -1.0;
  CHECK_THROWS_AS(p.validate(), ParameterError);
  p = SystemParams{};
  p.g0 = -0.1;
  CHECK_THROWS_AS(p.validate(), ParameterError);
  p = SystemParams{};
  p.drive = std::nan("");
  CHECK_THROWS_AS(p.validate(), ParameterError);
}

TEST_CASE("X and Y identities") {
  ref::Sampler s(51);
  for (int k = 0; k < 50; ++k) {
    const HalfInt f = HalfInt::from_twice(s.integer(1, 8));
    const SystemParams p = s.params();
    const CouplingOperators ops = coupling_operator(f, Polarization(s.uniform(-kPi / 4, kPi / 4)));
    const XYMatrices xy = xy_matrices(p, ops);
    const CMatrix vd = ops.v.adjoint();
    CHECK((xy.x * vd - vd * xy.y).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((ops.v * xy.x - xy.y * ops.v).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("X and Y at g0 = 0 and their spectrum") {
  SystemParams p;
  p.g0 = 0.0;
  p.delta_a = 0.4;
  p.delta_c = -0.3;
  const CouplingOperators ops = coupling_operator(1, Polarization(0.2));
  const XYMatrices xy0 = xy_matrices(p, ops);
  const Complex y0 = std::conj(p.e_a() * p.e_c());
  CHECK((xy0.x - y0 * CMatrix::Identity(5, 5)).norm() == 0.0);
  CHECK((xy0.y - y0 * CMatrix::Identity(3, 3)).norm() == 0.0);

  p.g0 = 0.8;
  const XYMatrices xy = xy_matrices(p, ops);
  const NaturalBasis b = decompose(ops);
  const CMatrix yn = b.ground_vectors.adjoint() * xy.y * b.ground_vectors;
  for (int i = 0; i < 3; ++i) {
    CHECK(std::abs(yn(i, i) - (y0 - p.g0 * p.g0 * b.lambdas(i) * b.lambdas(i))) < 1e-12);
  }
  CHECK(offdiag(yn) < 1e-12);
}

TEST_CASE("trace, hermiticity, positivity, natural-basis diagonality") {
  ref::Sampler s(53);
  for (int k = 0; k < 60; ++k) {
    const HalfInt f = HalfInt::from_twice(s.integer(1, 8));
    const SystemParams p = s.params();
    const Case c = make_case(f, s.uniform(-kPi / 4, kPi / 4));
    const SteadyStateBlocks b = stationary_density(p, c.basis, c.ops);
    CHECK(b.trace() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(b.eta > 0.0);
    for (const CMatrix* m : {&b.rho_00, &b.rho_aa, &b.rho_bb}) {
      const double scale = std::max(m->cwiseAbs().maxCoeff(), 1e-300);
      CHECK((*m - m->adjoint()).cwiseAbs().maxCoeff() <= 1e-12 * scale);
      Eigen::SelfAdjointEigenSolver<CMatrix> eig(0.5 * (*m + m->adjoint()));
      CHECK(eig.eigenvalues().minCoeff() >= -1e-12 * scale);
    }
    const CMatrix& u = c.basis.ground_vectors;
    const CMatrix& w = c.basis.excited_vectors;
    const double s00 = b.rho_00.cwiseAbs().maxCoeff();
    CHECK(offdiag(u.adjoint() * b.rho_00 * u) <= 1e-10 * s00);
    CHECK(offdiag(u.adjoint() * b.rho_aa * u) <= 1e-10 * std::max(b.rho_aa.cwiseAbs().maxCoeff(), 1e-300));
    CHECK(offdiag(w.adjoint() * b.rho_bb * w) <= 1e-10 * std::max(b.rho_bb.cwiseAbs().maxCoeff(), 1e-300));
    CHECK(offdiag(u.adjoint() * b.rho_0a * u) <= 1e-10 * std::max(b.rho_0a.cwiseAbs().maxCoeff(), 1e-300));
    CHECK(offdiag(u.adjoint() * b.rho_0b * w) <= 1e-10 * std::max(b.rho_0b.cwiseAbs().maxCoeff(), 1e-300));
    CHECK(offdiag(u.adjoint() * b.rho_ab * w) <= 1e-10 * std::max(b.rho_ab.cwiseAbs().maxCoeff(), 1e-300));
  }
}

TEST_CASE("no drive leaves only the ground manifold") {
  SystemParams p;
  p.drive = 0.0;
  const Case c = make_case(2, 0.3);
  const SteadyStateBlocks b = stationary_density(p, c.basis, c.ops);
  CHECK(b.rho_aa.norm() == 0.0);
  CHECK(b.rho_bb.norm() == 0.0);
  CHECK(b.rho_0a.norm() == 0.0);
  CHECK(b.rho_00.trace().real() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("leading-order normalisation matches the closed-form denominator") {
  ref::Sampler s(59);
  for (int k = 0; k < 60; ++k) {
    const HalfInt f = HalfInt::from_twice(s.integer(1, 8));
    const SystemParams p = s.params();
    const Case c = make_case(f, s.uniform(-kPi / 4, kPi / 4));
    const SteadyStateBlocks b = stationary_density(p, c.basis, c.ops);
    const AlphaCoefficients a = alpha_trace(c.basis);
    const Complex prod = p.e_a() * p.e_c();
    const double g2 = p.g0 * p.g0;
    const double den = std::norm(prod) * a.alpha0 - 2 * prod.real() * a.alpha1 * g2 + a.alpha2 * g2 * g2;
    CHECK(1.0 / b.eta_leading == doctest::Approx(den).epsilon(1e-10));
    // Closed-form transmissions are the block traces at leading-order normalisation.
    const double rescale = b.eta_leading / b.eta;
    CHECK(b.rho_aa.trace().real() * rescale == doctest::Approx(t_cav(p, a)).epsilon(1e-12));
    CHECK(b.rho_bb.trace().real() * rescale == doctest::Approx(t_sp(p, a)).epsilon(1e-12));
  }
}

TEST_CASE("block scaling with the drive") {
  SystemParams p;
  p.delta_a = 0.2;
  p.delta_c = -0.1;
  p.drive = 2e-3;
  SystemParams half = p;
  half.drive = 1e-3;
  const Case c = make_case(3, 0.15);
  const SteadyStateBlocks b1 = stationary_density(p, c.basis, c.ops);
  const SteadyStateBlocks b2 = stationary_density(half, c.basis, c.ops);
  CHECK(b1.rho_00.norm() / b2.rho_00.norm() == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(b1.rho_aa.norm() / b2.rho_aa.norm() == doctest::Approx(4.0).epsilon(1e-3));
  CHECK(b1.rho_bb.norm() / b2.rho_bb.norm() == doctest::Approx(4.0).epsilon(1e-3));
  CHECK(b1.rho_ab.norm() / b2.rho_ab.norm() == doctest::Approx(4.0).epsilon(1e-3));
  CHECK(b1.rho_0a.norm() / b2.rho_0a.norm() == doctest::Approx(2.0).epsilon(1e-3));
  CHECK(b1.rho_0b.norm() / b2.rho_0b.norm() == doctest::Approx(2.0).epsilon(1e-3));
}

TEST_CASE("truncated equations: residual orders") {
  SystemParams p;
  p.drive = 1e-3;
  SystemParams half = p;
  half.drive = 5e-4;
  for (double eps : {0.0, 0.3, 0.7}) {
    const Case c = make_case(2, eps);
    const TruncatedResiduals r1 = truncated_equation_residuals(p, c.ops, stationary_density(p, c.basis, c.ops));
    const TruncatedResiduals r2 =
        truncated_equation_residuals(half, c.ops, stationary_density(half, c.basis, c.ops));
    // The populations and rho_ab solve their equations exactly at this order.
    CHECK(r1.diagonal() < 1e-15);
    CHECK(r1.ab < 1e-15);
    // rho_0a and rho_0b drop O(E^3) terms.
    CHECK(r1.off_diagonal() / r2.off_diagonal() == doctest::Approx(8.0).epsilon(0.01));
    CHECK(r1.off_diagonal() > 1e-12);
  }
}

TEST_CASE("weak-drive indicator") {
  const Case c = make_case(1, 0.3);
  SystemParams p;
  CHECK(stationary_density(p, c.basis, c.ops).weak_drive());
  p.drive = 0.5;
  CHECK_FALSE(stationary_density(p, c.basis, c.ops).weak_drive());
}

TEST_CASE("circular polarization and mismatched inputs") {
  SystemParams p;
  const SteadyStateBlocks b = stationary_density(p, 2, Polarization::circular());
  CHECK(b.trace() == doctest::Approx(1.0).epsilon(1e-12));
  // Only the stretched ground state is populated.
  CHECK(b.rho_00(4, 4).real() == doctest::Approx(b.rho_00.trace().real()).epsilon(1e-12));
  const Case c = make_case(2, 0.1);
  const CouplingOperators other = coupling_operator(2, Polarization(0.2));
  CHECK_THROWS_AS(stationary_density(p, c.basis, other), ParameterError);
  CHECK_THROWS_AS(stationary_density(p, decompose(c.ops), c.ops), ParameterError);
}

TEST_CASE("half-integral F") {
  SystemParams p;
  p.delta_a = 0.1;
  for (int tf : {1, 3, 5}) {
    const SteadyStateBlocks b = stationary_density(p, HalfInt::from_twice(tf), Polarization(0.4));
    CHECK(b.trace() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(b.rho_00.rows() == tf + 1);
    CHECK(b.rho_bb.rows() == tf + 3);
  }
}
