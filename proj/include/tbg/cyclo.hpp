#pragma once

// The cyclotomic field Q(zeta), zeta a primitive 12th root of unity.
// Elements are stored as c0 + c1*zeta + c2*zeta^2 + c3*zeta^3 with the
// reduction rule zeta^4 = zeta^2 - 1 (minimal polynomial x^4 - x^2 + 1).
// This single field houses omega = zeta^4, i = zeta^3 and sqrt3 = 2 zeta - zeta^3.

#include <array>
#include <complex>
#include <string>

#include "tbg/rational.hpp"

namespace tbg {

class Cyclo {
 public:
  Cyclo() = default;
  explicit Cyclo(const Rational& r) { c_[0] = r; }
  explicit Cyclo(long n) { c_[0] = n; }
  Cyclo(Rational a, Rational b, Rational c, Rational d)
      : c_{std::move(a), std::move(b), std::move(c), std::move(d)} {}

  static Cyclo zero() { return Cyclo(); }
  static Cyclo one() { return Cyclo(1); }
  static Cyclo zeta() { return Cyclo(Rational(0), Rational(1), Rational(0), Rational(0)); }
  static Cyclo omega() { return Cyclo(Rational(-1), Rational(0), Rational(1), Rational(0)); }
  static Cyclo omega2() { return Cyclo(Rational(0), Rational(0), Rational(-1), Rational(0)); }
  static Cyclo imag_unit() { return Cyclo(Rational(0), Rational(0), Rational(0), Rational(1)); }
  static Cyclo sqrt3() { return Cyclo(Rational(0), Rational(2), Rational(0), Rational(-1)); }
  // mu = omega^2 - omega = -i*sqrt3
  static Cyclo mu() { return Cyclo(Rational(1), Rational(0), Rational(-2), Rational(0)); }

  const Rational& coeff(int k) const { return c_[k]; }

  bool is_zero() const;
  bool is_rational() const;
  // the rational value when is_rational()
  const Rational& rational_part() const { return c_[0]; }

  Cyclo operator+(const Cyclo& o) const;
  Cyclo operator-(const Cyclo& o) const;
  Cyclo operator-() const;
  Cyclo operator*(const Cyclo& o) const;
  Cyclo& operator+=(const Cyclo& o);
  Cyclo& operator-=(const Cyclo& o);
  Cyclo& operator*=(const Cyclo& o) { *this = *this * o; return *this; }
  bool operator==(const Cyclo& o) const { return c_ == o.c_; }
  bool operator!=(const Cyclo& o) const { return !(*this == o); }

  Cyclo scaled(const Rational& r) const;

  // field automorphism zeta -> zeta^{-1}; coincides with complex conjugation
  Cyclo conj() const;

  // multiplicative inverse; throws std::domain_error on zero
  Cyclo inv() const;

  // z * conj(z) lies in the real subfield Q(sqrt3); returns (u, v) with
  // |z|^2 = u + v*sqrt3
  std::pair<Rational, Rational> abs_sq_parts() const;
  // |z|^2 when it happens to be rational (throws otherwise)
  Rational abs_sq_rational() const;

  std::complex<double> to_complex() const;

  std::array<std::string, 4> serialize() const;
  static Cyclo deserialize(const std::array<std::string, 4>& s);

  std::string str() const;

 private:
  std::array<Rational, 4> c_{};  // value-initialized: all zero
};

inline Cyclo operator*(const Rational& r, const Cyclo& z) { return z.scaled(r); }

// gamma_(a,b) = omega^2 a - omega b; |gamma_(a,b)|^2 = a^2 + ab + b^2
Cyclo gamma_ab(long a, long b);

}  // namespace tbg
