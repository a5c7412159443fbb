#include "reference.hpp"

#include <cmath>
#include <map>
#include <tuple>

#include <Eigen/LU>
#include <Eigen/SVD>

namespace ref {

namespace {

// Coupled states for (j1, j2) as columns over the product basis
// |m1, m2>, index = (j1 + m1) * (2 j2 + 1) + (j2 + m2).
struct CoupledTable {
  int tj1, tj2;
  std::map<std::pair<int, int>, Eigen::VectorXd> states;  // (2J, 2M) -> vector
};

int product_index(int tj2, int tm1, int tm2, int tj1) {
  return ((tj1 + tm1) / 2) * (tj2 + 1) + (tj2 + tm2) / 2;
}

// J_- = J1_- + J2_- on the product basis.
Eigen::MatrixXd lowering(int tj1, int tj2) {
  const int n = (tj1 + 1) * (tj2 + 1);
  Eigen::MatrixXd op = Eigen::MatrixXd::Zero(n, n);
  for (int tm1 = -tj1; tm1 <= tj1; tm1 += 2) {
    for (int tm2 = -tj2; tm2 <= tj2; tm2 += 2) {
      const int from = product_index(tj2, tm1, tm2, tj1);
      if (tm1 > -tj1) {
        const double c = 0.5 * std::sqrt((tj1 + tm1) * (tj1 - tm1 + 2.0));
        op(product_index(tj2, tm1 - 2, tm2, tj1), from) += c;
      }
      if (tm2 > -tj2) {
        const double c = 0.5 * std::sqrt((tj2 + tm2) * (tj2 - tm2 + 2.0));
        op(product_index(tj2, tm1, tm2 - 2, tj1), from) += c;
      }
    }
  }
  return op;
}

const CoupledTable& table(int tj1, int tj2) {
  static std::map<std::pair<int, int>, CoupledTable> cache;
  auto it = cache.find({tj1, tj2});
  if (it != cache.end()) return it->second;

  CoupledTable t{tj1, tj2, {}};
  const int n = (tj1 + 1) * (tj2 + 1);
  const Eigen::MatrixXd lower = lowering(tj1, tj2);
  for (int tj = tj1 + tj2; tj >= std::abs(tj1 - tj2); tj -= 2) {
    // Highest-weight state: in the M = J subspace, orthogonal to every
    // higher multiplet's M = J member.
    std::vector<int> members;
    for (int tm1 = -tj1; tm1 <= tj1; tm1 += 2) {
      const int tm2 = tj - tm1;
      if (std::abs(tm2) <= tj2 && (tj2 - tm2) % 2 == 0) members.push_back(product_index(tj2, tm1, tm2, tj1));
    }
    Eigen::MatrixXd sub = Eigen::MatrixXd::Zero(n, static_cast<int>(members.size()));
    for (std::size_t k = 0; k < members.size(); ++k) sub(members[k], static_cast<int>(k)) = 1.0;
    std::vector<Eigen::VectorXd> higher;
    for (int tk = tj1 + tj2; tk > tj; tk -= 2) higher.push_back(t.states.at({tk, tj}));
    Eigen::MatrixXd constraints(static_cast<int>(higher.size()), static_cast<int>(members.size()));
    for (std::size_t r = 0; r < higher.size(); ++r) constraints.row(static_cast<int>(r)) = higher[r].transpose() * sub;
    Eigen::VectorXd coeffs;
    if (higher.empty()) {
      coeffs = Eigen::VectorXd::Zero(static_cast<int>(members.size()));
      coeffs(coeffs.size() - 1) = 1.0;  // only |j1, j2> for the stretched state
    } else {
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(constraints, Eigen::ComputeFullV);
      coeffs = svd.matrixV().col(svd.matrixV().cols() - 1);
    }
    Eigen::VectorXd top = sub * coeffs;
    top.normalize();
    // Condon-Shortley: coefficient of m1 = j1 positive.
    const int lead = product_index(tj2, tj1, tj - tj1, tj1);
    if (top(lead) < 0) top = -top;
    t.states[{tj, tj}] = top;
    Eigen::VectorXd cur = top;
    for (int tm = tj; tm > -tj; tm -= 2) {
      cur = lower * cur;
      cur.normalize();
      t.states[{tj, tm - 2}] = cur;
    }
  }
  return cache.emplace(std::make_pair(tj1, tj2), std::move(t)).first->second;
}

}  // namespace

double clebsch_gordan(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2, HalfInt big_j, HalfInt big_m) {
  const int tj1 = j1.twice(), tj2 = j2.twice(), tj = big_j.twice();
  if (m1.twice() + m2.twice() != big_m.twice()) return 0.0;
  if (std::abs(m1.twice()) > tj1 || std::abs(m2.twice()) > tj2 || std::abs(big_m.twice()) > tj) return 0.0;
  if ((tj1 - m1.twice()) % 2 || (tj2 - m2.twice()) % 2 || (tj - big_m.twice()) % 2) return 0.0;
  if (tj > tj1 + tj2 || tj < std::abs(tj1 - tj2) || (tj1 + tj2 + tj) % 2) return 0.0;
  const auto& t = table(tj1, tj2);
  return t.states.at({tj, big_m.twice()})(product_index(tj2, m1.twice(), m2.twice(), tj1));
}

double wigner_3j(HalfInt j1, HalfInt j2, HalfInt j3, HalfInt m1, HalfInt m2, HalfInt m3) {
  const int phase2 = j1.twice() - j2.twice() - m3.twice();  // twice (j1 - j2 - m3)
  const double sign = (phase2 / 2) % 2 == 0 ? 1.0 : -1.0;
  return sign / std::sqrt(j3.twice() + 1.0) * ref::clebsch_gordan(j1, m1, j2, m2, j3, -m3);
}

double wigner_6j(HalfInt j1, HalfInt j2, HalfInt j3, HalfInt j4, HalfInt j5, HalfInt j6) {
  auto range = [](HalfInt j) {
    std::vector<HalfInt> ms;
    for (int tm = -j.twice(); tm <= j.twice(); tm += 2) ms.push_back(HalfInt::from_twice(tm));
    return ms;
  };
  double sum = 0.0;
  for (HalfInt m1 : range(j1)) {
    for (HalfInt m2 : range(j2)) {
      const HalfInt m3 = -(m1 + m2);  // (j1 j2 j3; -m1 -m2 -m3)
      if (std::abs(m3.twice()) > j3.twice()) continue;
      for (HalfInt m5 : range(j5)) {
        const HalfInt m6 = m5 - m1;  // (j1 j5 j6; m1 -m5 m6)
        if (std::abs(m6.twice()) > j6.twice()) continue;
        const HalfInt m4 = m6 - m2;  // (j4 j2 j6; m4 m2 -m6)
        if (std::abs(m4.twice()) > j4.twice()) continue;
        if ((-m4 + m5 + m3).twice() != 0) continue;  // (j4 j5 j3; -m4 m5 m3)
        const int s2 = (j1 - m1).twice() + (j2 - m2).twice() + (j3 - m3).twice() + (j4 - m4).twice() +
                       (j5 - m5).twice() + (j6 - m6).twice();
        const double sign = (s2 / 2) % 2 == 0 ? 1.0 : -1.0;
        sum += sign * ref::wigner_3j(j1, j2, j3, -m1, -m2, -m3) * ref::wigner_3j(j1, j5, j6, m1, -m5, m6) *
               ref::wigner_3j(j4, j2, j6, m4, m2, -m6) * ref::wigner_3j(j4, j5, j3, -m4, m5, m3);
      }
    }
  }
  return sum;
}

double legendre(int l, double x) {
  auto binom = [](int n, int k) {
    double b = 1.0;
    for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
    return b;
  };
  double sum = 0.0;
  for (int k = 0; 2 * k <= l; ++k) {
    const double term = binom(l, k) * binom(2 * l - 2 * k, l) * std::pow(x, l - 2 * k);
    sum += k % 2 == 0 ? term : -term;
  }
  return sum / std::pow(2.0, l);
}

Alphas alphas_by_inverse(const CMatrix& v, const CMatrix& mat_a) {
  const CMatrix vv = v * v.adjoint();
  return {(vv.inverse() * mat_a).trace().real(), mat_a.trace().real(), (vv * mat_a).trace().real()};
}

TwoLevelObservables two_level_master_equation(const degenjc::SystemParams& p, int n_max) {
  // Levels |g>, |e>; index = level * (n_max + 1) + n.
  const int nf = n_max + 1;
  const int dim = 2 * nf;
  CMatrix a = CMatrix::Zero(dim, dim), sigma = CMatrix::Zero(dim, dim), pe = CMatrix::Zero(dim, dim);
  for (int lvl = 0; lvl < 2; ++lvl) {
    for (int n = 1; n < nf; ++n) a(lvl * nf + n - 1, lvl * nf + n) = std::sqrt(static_cast<double>(n));
  }
  for (int n = 0; n < nf; ++n) {
    sigma(n, nf + n) = 1.0;
    pe(nf + n, nf + n) = 1.0;
  }
  const CMatrix ad = a.adjoint();
  const CMatrix h = p.delta_c * ad * a + p.delta_a * pe + p.g0 * (sigma * ad + sigma.adjoint() * a) +
                    p.drive * (a + ad);
  const int n2 = dim * dim;
  const Complex i1(0, 1);
  CMatrix l = CMatrix::Zero(n2, n2);
  // Element-wise construction of d rho / dt = -i[H, rho] + D[rho].
  auto apply = [&](const CMatrix& rho) {
    CMatrix out = -i1 * (h * rho - rho * h);
    for (auto [c, rate] : {std::pair<const CMatrix*, double>{&a, p.kappa}, {&sigma, p.gamma}}) {
      const CMatrix cd = c->adjoint();
      out += rate * (2.0 * (*c) * rho * cd - cd * (*c) * rho - rho * cd * (*c));
    }
    return out;
  };
  for (int col = 0; col < n2; ++col) {
    CMatrix unit = CMatrix::Zero(dim, dim);
    unit(col % dim, col / dim) = 1.0;
    const CMatrix image = apply(unit);
    l.col(col) = Eigen::Map<const degenjc::CVector>(image.data(), n2);
  }
  l.row(0).setZero();
  for (int k = 0; k < dim; ++k) l(0, k * dim + k) = 1.0;
  degenjc::CVector b = degenjc::CVector::Zero(n2);
  b(0) = 1.0;
  const degenjc::CVector x = l.fullPivLu().solve(b);
  const CMatrix rho = Eigen::Map<const CMatrix>(x.data(), dim, dim);
  return {(ad * a * rho).trace().real(), (pe * rho).trace().real()};
}

double Sampler::epsilon(double margin) { return uniform(-degenjc::kPi / 4 + margin, degenjc::kPi / 4 - margin); }

degenjc::SystemParams Sampler::params() {
  degenjc::SystemParams p;
  p.g0 = uniform(0.2, 2.0);
  p.kappa = uniform(0.02, 1.0);
  p.gamma = uniform(0.02, 1.0);
  p.delta_a = uniform(-2.0, 2.0);
  p.delta_c = uniform(-2.0, 2.0);
  p.drive = uniform(1e-4, 1e-2);
  return p;
}

CMatrix Sampler::hermitian(int n) {
  CMatrix m(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) m(r, c) = Complex(uniform(-1, 1), uniform(-1, 1));
  }
  return 0.5 * (m + m.adjoint());
}

}  // namespace ref
