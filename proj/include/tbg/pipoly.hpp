#pragma once

// Polynomials in the formal symbol Pi := pi/sqrt(3) with rational coefficients.
// Pi is never evaluated here; traces are degree-1 elements q*Pi and determinant
// coefficients are higher-degree combinations of those.

#include <vector>
#include <string>

#include "tbg/rational.hpp"

namespace tbg {

class PiPoly {
 public:
  PiPoly() = default;
  explicit PiPoly(Rational constant) : c_{std::move(constant)} { trim(); }
  explicit PiPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

  static PiPoly zero() { return PiPoly(); }
  static PiPoly one() { return PiPoly(Rational(1)); }
  // q * Pi^k
  static PiPoly monomial(Rational q, int k);

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  Rational coeff(int k) const {
    return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : Rational(0);
  }
  const std::vector<Rational>& coeffs() const { return c_; }

  PiPoly operator+(const PiPoly& o) const;
  PiPoly operator-(const PiPoly& o) const;
  PiPoly operator-() const;
  PiPoly operator*(const PiPoly& o) const;
  PiPoly scaled(const Rational& r) const;
  PiPoly& operator+=(const PiPoly& o) { *this = *this + o; return *this; }
  bool operator==(const PiPoly& o) const { return c_ == o.c_; }
  bool operator!=(const PiPoly& o) const { return !(*this == o); }

  double eval_double(double pi_over_sqrt3) const;

  std::vector<std::string> serialize() const;
  static PiPoly deserialize(const std::vector<std::string>& s);
  std::string str() const;  // human-readable, e.g. "4 * Pi"

 private:
  void trim();
  std::vector<Rational> c_;  // c_[k] multiplies Pi^k; trailing zeros trimmed
};

}  // namespace tbg
