#pragma once

#include <string>

#include "colouring/rational.hpp"

namespace colouring {

/// Element a + b*sqrt(7) of the real quadratic field Q(sqrt(7)).
///
/// The representation is unique because sqrt(7) is irrational, so equality
/// is component-wise. All operations are exact; sign determination and
/// decimal printing never consult hardware floating point.
struct Q7 {
  Rational a;
  Rational b;

  Q7() = default;
  Q7(Rational a_, Rational b_) : a(std::move(a_)), b(std::move(b_)) {}
  Q7(long n) : a(n) {}  // NOLINT(google-explicit-constructor)

  static Q7 sqrt7() { return Q7(Rational(0), Rational(1)); }

  bool is_zero() const { return a.is_zero() && b.is_zero(); }
  bool is_rational() const { return b.is_zero(); }

  /// Exact sign in {-1, 0, +1}. Mixed-sign coefficients are resolved by
  /// comparing a^2 against 7 b^2.
  int sign() const;

  /// Multiplicative inverse via the conjugate: (a - b sqrt7) / (a^2 - 7 b^2).
  Q7 inverse() const;

  /// Correctly rounded decimal expansion to `places` digits after the point
  /// (round half away from zero), computed by interval refinement of sqrt(7).
  std::string to_decimal(int places) const;

  /// Double approximation; convenience only, never used in certificates.
  double to_double() const;

  Q7 operator-() const { return Q7(-a, -b); }
  Q7& operator+=(const Q7& o) { a += o.a; b += o.b; return *this; }
  Q7& operator-=(const Q7& o) { a -= o.a; b -= o.b; return *this; }
  Q7& operator*=(const Q7& o) {
    // (a + b s)(c + d s) = (ac + 7bd) + (ad + bc) s,  s^2 = 7
    Rational na = a * o.a + Rational(7) * b * o.b;
    Rational nb = a * o.b + b * o.a;
    a = std::move(na);
    b = std::move(nb);
    return *this;
  }

  friend Q7 operator+(Q7 x, const Q7& y) { return x += y; }
  friend Q7 operator-(Q7 x, const Q7& y) { return x -= y; }
  friend Q7 operator*(Q7 x, const Q7& y) { return x *= y; }
  friend Q7 operator/(Q7 x, const Q7& y) { return x *= y.inverse(); }

  friend bool operator==(const Q7& x, const Q7& y) { return x.a == y.a && x.b == y.b; }
  friend bool operator!=(const Q7& x, const Q7& y) { return !(x == y); }
  friend bool operator<(const Q7& x, const Q7& y) { return (x - y).sign() < 0; }
  friend bool operator>(const Q7& x, const Q7& y) { return (x - y).sign() > 0; }
  friend bool operator<=(const Q7& x, const Q7& y) { return (x - y).sign() <= 0; }
  friend bool operator>=(const Q7& x, const Q7& y) { return (x - y).sign() >= 0; }
};

/// Integer square root floor(sqrt(n)), n >= 0.
BigInt isqrt(const BigInt& n);

}  // namespace colouring
