#include "colouring/q7.hpp"

#include <cmath>
#include <cstdlib>

namespace colouring {

BigInt isqrt(const BigInt& n) {
  BigInt r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

int Q7::sign() const {
  const int sa = a.sign();
  const int sb = b.sign();
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // Mixed signs: the value's sign follows whichever of |a| and |b sqrt7|
  // dominates, decided exactly by comparing a^2 with 7 b^2.
  const Rational a2 = a * a;
  const Rational b27 = Rational(7) * b * b;
  if (a2 == b27) return 0;  // unreachable for nonzero b (sqrt7 irrational)
  return a2 > b27 ? sa : sb;
}

Q7 Q7::inverse() const {
  const Rational norm = a * a - Rational(7) * b * b;
  if (norm.is_zero()) throw std::domain_error("Q7: inverse of zero");
  return Q7(a / norm, -b / norm);
}

double Q7::to_double() const {
  return a.to_double() + b.to_double() * std::sqrt(7.0);
}

namespace {

BigInt pow10(unsigned k) {
  BigInt p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, k);
  return p;
}

// floor(A + B*sqrt7) for rational A and nonzero rational B, by refining the
// enclosure t/10^k <= sqrt7 <= (t+1)/10^k until the floor is pinned down.
// Well defined: A + B*sqrt7 is irrational, hence never an integer.
BigInt floor_with_sqrt7(const Rational& A, const Rational& B) {
  for (unsigned k = 24;; k *= 2) {
    const BigInt tenk = pow10(k);
    const BigInt t = isqrt(BigInt(7) * tenk * tenk);
    const Rational lo7(t, tenk), hi7(t + 1, tenk);
    const Rational lo = B.sign() > 0 ? A + B * lo7 : A + B * hi7;
    const Rational hi = B.sign() > 0 ? A + B * hi7 : A + B * lo7;
    const BigInt fl = lo.floor(), fh = hi.floor();
    if (fl == fh) return fl;
  }
}

}  // namespace

std::string Q7::to_decimal(int places) const {
  if (places < 1) throw std::invalid_argument("Q7::to_decimal: places must be >= 1");
  const int s = sign();
  const Q7 mag = s < 0 ? -*this : *this;
  const Rational scale{pow10(static_cast<unsigned>(places)), BigInt(1)};
  // n = floor(|x| * 10^places + 1/2): round to nearest, ties away from zero.
  const Rational A = mag.a * scale + Rational(1, 2);
  const Rational B = mag.b * scale;
  const BigInt n = B.is_zero() ? A.floor() : floor_with_sqrt7(A, B);

  std::string digits = n.get_str();
  if (static_cast<int>(digits.size()) <= places) {
    digits.insert(0, static_cast<size_t>(places) + 1 - digits.size(), '0');
  }
  digits.insert(digits.size() - static_cast<size_t>(places), ".");
  if (s < 0 && n != 0) digits.insert(0, "-");
  return digits;
}

}  // namespace colouring
