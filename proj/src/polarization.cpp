#include "degenjc/polarization.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace degenjc {

namespace {

constexpr double kEndpointSlack = 1e-12;

// D_q depends only on (F, q); sweeps rebuild V thousands of times per F.
const std::array<CMatrix, 3>& cached_lowering_operators(HalfInt f) {
  static std::mutex mutex;
  static std::map<int, std::array<CMatrix, 3>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(f.twice());
  if (it == cache.end()) {
    std::array<CMatrix, 3> ops;
    for (int q = -1; q <= 1; ++q) ops[static_cast<std::size_t>(q + 1)] = lowering_operator(f, q);
    it = cache.emplace(f.twice(), std::move(ops)).first;
  }
  return it->second;
}

}  // namespace

Polarization::Polarization(double epsilon) : epsilon_(epsilon) {
  const double edge = kPi / 4;
  if (!std::isfinite(epsilon) || std::abs(epsilon) > edge + kEndpointSlack) {
    throw ParameterError("elliptic angle must lie in [-pi/4, pi/4], got " + std::to_string(epsilon));
  }
  if (epsilon_ > edge) epsilon_ = edge;
  if (epsilon_ < -edge) epsilon_ = -edge;
}

std::array<double, 3> Polarization::components() const {
  // cos(2 * pi/4) is 6e-17 in double, which would leave a 8e-9 linear
  // admixture at the endpoints.
  if (std::abs(epsilon_) == kPi / 4) return {0.0, 0.0, epsilon_ > 0 ? -1.0 : 1.0};
  const double c = std::max(0.0, std::cos(2 * epsilon_));
  return {0.0, std::sqrt(c), -std::sqrt(2.0) * std::sin(epsilon_)};
}

AtomSpec::AtomSpec(HalfInt f_in) : f(f_in) {
  if (f.twice() < 0) throw ParameterError("angular momentum F must be >= 0");
}

CMatrix lowering_operator(HalfInt f, int q) {
  if (q < -1 || q > 1) throw ParameterError("polarization index q must be -1, 0 or +1");
  const AtomSpec atom(f);
  const HalfInt fe = atom.excited_f();
  CMatrix d = CMatrix::Zero(atom.ground_dim(), atom.excited_dim());
  for (int row = 0; row < atom.ground_dim(); ++row) {
    const HalfInt m = atom.ground_m(row);
    const HalfInt mp = m + q;
    const int col = (mp.twice() + fe.twice()) / 2;
    if (col < 0 || col >= atom.excited_dim()) continue;
    d(row, col) = clebsch_gordan(f, m, 1, q, fe, mp);
  }
  return d;
}

CouplingOperators coupling_operator(HalfInt f, Polarization pol) {
  const AtomSpec atom(f);
  const auto& d = cached_lowering_operators(f);
  const auto e = pol.components();
  CMatrix v = e[1] * d[1] + e[2] * d[2];
  return CouplingOperators{atom, pol, d, std::move(v)};
}

}  // namespace degenjc
