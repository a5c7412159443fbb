#pragma once

// Angular-momentum coupling coefficients.
//
// All symbols are evaluated from the Racah sums in exact rational arithmetic
// and converted to double only at the very end, so the results are correctly
// rounded up to the final square root. The Condon-Shortley phase convention is
// used throughout: every Clebsch-Gordan coefficient in this library is defined
// from the 3j symbol as
//
//   C^{JM}_{j m j' m'} = (-1)^{j - j' + M} sqrt(2J + 1) ( j  j'  J )
//                                                        ( m  m' -M )

#include <compare>
#include <cstdlib>
#include <string>

namespace degenjc {

/// Angular momentum or magnetic quantum number, stored as twice its value so
/// half-integers are exact.
class HalfInt {
 public:
  constexpr HalfInt() = default;
  constexpr HalfInt(int value) : twice_(2 * value) {}  // NOLINT: implicit by intent

  static constexpr HalfInt from_twice(int twice) {
    HalfInt h;
    h.twice_ = twice;
    return h;
  }
  /// Accepts only exact multiples of 1/2; throws std::invalid_argument otherwise.
  static HalfInt from_double(double value);

  constexpr int twice() const { return twice_; }
  constexpr double value() const { return 0.5 * twice_; }
  constexpr bool is_integral() const { return twice_ % 2 == 0; }

  constexpr HalfInt operator-() const { return from_twice(-twice_); }
  constexpr HalfInt operator+(HalfInt o) const { return from_twice(twice_ + o.twice_); }
  constexpr HalfInt operator-(HalfInt o) const { return from_twice(twice_ - o.twice_); }
  constexpr HalfInt& operator+=(HalfInt o) {
    twice_ += o.twice_;
    return *this;
  }

  constexpr bool operator==(const HalfInt&) const = default;
  constexpr auto operator<=>(const HalfInt&) const = default;

  std::string to_string() const;

 private:
  int twice_ = 0;
};

/// True when j - m is an integer and |m| <= j.
constexpr bool is_projection_of(HalfInt j, HalfInt m) {
  return (j.twice() - m.twice()) % 2 == 0 && std::abs(m.twice()) <= j.twice();
}

/// |j1 - j2| <= j3 <= j1 + j2 with integral perimeter.
constexpr bool satisfies_triangle(HalfInt j1, HalfInt j2, HalfInt j3) {
  const int a = j1.twice(), b = j2.twice(), c = j3.twice();
  return (a + b + c) % 2 == 0 && c <= a + b && c >= std::abs(a - b);
}

/// Wigner 3j symbol. Returns exactly 0 when m1 + m2 + m3 != 0, the triangle
/// rule fails, or some |m_i| > j_i. Throws std::invalid_argument when some
/// j_i - m_i is not an integer or some j_i is negative.
double wigner_3j(HalfInt j1, HalfInt j2, HalfInt j3, HalfInt m1, HalfInt m2, HalfInt m3);

/// Wigner 6j symbol {j1 j2 j3; j4 j5 j6}. Returns 0 when any of the four triads
/// (j1 j2 j3), (j1 j5 j6), (j4 j2 j6), (j4 j5 j3) violates the triangle rule.
double wigner_6j(HalfInt j1, HalfInt j2, HalfInt j3, HalfInt j4, HalfInt j5, HalfInt j6);

/// Clebsch-Gordan coefficient <j m; j2 m2 | J M>. Any out-of-range or
/// selection-rule-violating combination yields 0.
double clebsch_gordan(HalfInt j, HalfInt m, HalfInt j2, HalfInt m2, HalfInt big_j, HalfInt big_m);

}  // namespace degenjc
