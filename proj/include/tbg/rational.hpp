#pragma once

// Exact rational arithmetic. Backed by GMP's mpq_class: always canonical
// (lowest terms, positive denominator), arbitrary precision, no rounding.

#include <gmpxx.h>
#include <string>
#include <stdexcept>

namespace tbg {

using Rational = mpq_class;
using Integer = mpz_class;

namespace rat {

// "p/q" (or "p" when q=1). Rejects q=0 and malformed input.
Rational parse(const std::string& s);

std::string str(const Rational& r);

inline Rational of(long num, long den = 1) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline bool is_canonical(const Rational& r) {
  return sgn(r.get_den()) > 0 && gcd(Integer(abs(r.get_num())), r.get_den()) == 1;
}

// floor(num/den) for exact directed rounding
Integer floor_div(const Integer& num, const Integer& den);
Integer ceil_div(const Integer& num, const Integer& den);

// largest s with s^2 <= v (v >= 0)
Integer isqrt(const Integer& v);

double to_double(const Rational& r);

}  // namespace rat
}  // namespace tbg
