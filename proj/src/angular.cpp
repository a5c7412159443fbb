#include "degenjc/angular.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace degenjc {

namespace {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

constexpr int kFactorialTableSize = 256;

const std::vector<cpp_int>& factorial_table() {
  static const std::vector<cpp_int> table = [] {
    std::vector<cpp_int> t(kFactorialTableSize);
    t[0] = 1;
    for (int n = 1; n < kFactorialTableSize; ++n) t[n] = t[n - 1] * n;
    return t;
  }();
  return table;
}

cpp_int factorial(int n) {
  if (n < 0) throw std::logic_error("factorial of a negative integer");
  if (n < kFactorialTableSize) return factorial_table()[n];
  cpp_int f = factorial_table().back();
  for (int k = kFactorialTableSize; k <= n; ++k) f *= k;
  return f;
}

// Half-integer sums that must come out integral; argument is twice the value.
int whole(int twice) {
  if (twice % 2 != 0) throw std::logic_error("non-integral factorial argument");
  return twice / 2;
}

// Square of the triangle coefficient Delta(abc), arguments as twice values.
cpp_rational triangle_coefficient(int a, int b, int c) {
  return cpp_rational(factorial(whole(a + b - c)) * factorial(whole(a - b + c)) *
                          factorial(whole(-a + b + c)),
                      factorial(whole(a + b + c) + 1));
}

double signed_sqrt_product(int sign, const cpp_rational& squared, const cpp_rational& sum) {
  if (sum == 0) return 0.0;
  const double root = std::sqrt(squared.convert_to<double>());
  return sign * root * sum.convert_to<double>();
}

void require_well_formed(HalfInt j, HalfInt m) {
  if (j.twice() < 0) throw std::invalid_argument("negative angular momentum " + j.to_string());
  if ((j.twice() - m.twice()) % 2 != 0) {
    throw std::invalid_argument("j - m not integral for j=" + j.to_string() + ", m=" + m.to_string());
  }
}

}  // namespace

HalfInt HalfInt::from_double(double value) {
  const double twice = 2.0 * value;
  const double rounded = std::round(twice);
  if (std::abs(twice - rounded) > 1e-9 || std::abs(rounded) > 1e6) {
    throw std::invalid_argument("not a multiple of 1/2: " + std::to_string(value));
  }
  return from_twice(static_cast<int>(rounded));
}

std::string HalfInt::to_string() const {
  if (is_integral()) return std::to_string(twice_ / 2);
  return std::to_string(twice_) + "/2";
}

double wigner_3j(HalfInt j1, HalfInt j2, HalfInt j3, HalfInt m1, HalfInt m2, HalfInt m3) {
  require_well_formed(j1, m1);
  require_well_formed(j2, m2);
  require_well_formed(j3, m3);

  if (m1.twice() + m2.twice() + m3.twice() != 0) return 0.0;
  if (!satisfies_triangle(j1, j2, j3)) return 0.0;
  if (!is_projection_of(j1, m1) || !is_projection_of(j2, m2) || !is_projection_of(j3, m3)) return 0.0;

  const int a = j1.twice(), b = j2.twice(), c = j3.twice();
  const int ma = m1.twice(), mb = m2.twice(), mc = m3.twice();

  cpp_rational squared = triangle_coefficient(a, b, c);
  squared *= factorial(whole(a + ma)) * factorial(whole(a - ma)) * factorial(whole(b + mb)) *
             factorial(whole(b - mb)) * factorial(whole(c + mc)) * factorial(whole(c - mc));

  // Racah sum over k; a term exists only while every factorial argument is >= 0.
  const int lo = std::max({0, whole(b - c - ma), whole(a - c + mb)});
  const int hi = std::min({whole(a + b - c), whole(a - ma), whole(b + mb)});
  cpp_rational sum = 0;
  for (int k = lo; k <= hi; ++k) {
    const cpp_int denom = factorial(k) * factorial(whole(c - b + ma) + k) *
                          factorial(whole(c - a - mb) + k) * factorial(whole(a + b - c) - k) *
                          factorial(whole(a - ma) - k) * factorial(whole(b + mb) - k);
    const cpp_rational term(cpp_int(1), denom);
    if (k % 2 == 0) {
      sum += term;
    } else {
      sum -= term;
    }
  }

  const int phase = whole(a - b - mc);
  return signed_sqrt_product(phase % 2 == 0 ? 1 : -1, squared, sum);
}

double wigner_6j(HalfInt j1, HalfInt j2, HalfInt j3, HalfInt j4, HalfInt j5, HalfInt j6) {
  for (HalfInt j : {j1, j2, j3, j4, j5, j6}) {
    if (j.twice() < 0) throw std::invalid_argument("negative angular momentum " + j.to_string());
  }
  if (!satisfies_triangle(j1, j2, j3) || !satisfies_triangle(j1, j5, j6) ||
      !satisfies_triangle(j4, j2, j6) || !satisfies_triangle(j4, j5, j3)) {
    return 0.0;
  }

  const int a = j1.twice(), b = j2.twice(), c = j3.twice();
  const int d = j4.twice(), e = j5.twice(), f = j6.twice();

  const cpp_rational squared = triangle_coefficient(a, b, c) * triangle_coefficient(a, e, f) *
                               triangle_coefficient(d, b, f) * triangle_coefficient(d, e, c);

  const std::array<int, 4> triads = {whole(a + b + c), whole(a + e + f), whole(d + b + f),
                                     whole(d + e + c)};
  const std::array<int, 3> quads = {whole(a + b + d + e), whole(b + c + e + f), whole(c + a + f + d)};

  const int lo = *std::max_element(triads.begin(), triads.end());
  const int hi = *std::min_element(quads.begin(), quads.end());
  cpp_rational sum = 0;
  for (int t = lo; t <= hi; ++t) {
    cpp_int denom = 1;
    for (int s : triads) denom *= factorial(t - s);
    for (int q : quads) denom *= factorial(q - t);
    const cpp_rational term(factorial(t + 1), denom);
    if (t % 2 == 0) {
      sum += term;
    } else {
      sum -= term;
    }
  }
  return signed_sqrt_product(1, squared, sum);
}

double clebsch_gordan(HalfInt j, HalfInt m, HalfInt j2, HalfInt m2, HalfInt big_j, HalfInt big_m) {
  for (HalfInt x : {j, j2, big_j}) {
    if (x.twice() < 0) return 0.0;
  }
  if ((j.twice() - m.twice()) % 2 != 0 || (j2.twice() - m2.twice()) % 2 != 0 ||
      (big_j.twice() - big_m.twice()) % 2 != 0) {
    return 0.0;
  }
  if (m.twice() + m2.twice() != big_m.twice()) return 0.0;
  if (!is_projection_of(j, m) || !is_projection_of(j2, m2) || !is_projection_of(big_j, big_m)) return 0.0;
  if (!satisfies_triangle(j, j2, big_j)) return 0.0;

  const int phase = whole(j.twice() - j2.twice() + big_m.twice());
  const double sign = phase % 2 == 0 ? 1.0 : -1.0;
  return sign * std::sqrt(big_j.twice() + 1.0) * wigner_3j(j, j2, big_j, m, m2, -big_m);
}

}  // namespace degenjc
