#pragma once

// Rational-endpoint interval arithmetic with outward (enclosure) semantics.
// Rational operations are exact; only roots and the named constants widen.
// This is the bridge that turns PiPoly identities into integer-only
// inequality checks.

#include <string>

#include "tbg/rational.hpp"
#include "tbg/pipoly.hpp"

namespace tbg {

class RatInterval {
 public:
  RatInterval() = default;  // [0,0]
  explicit RatInterval(Rational v) : lo_(v), hi_(std::move(v)) {}
  RatInterval(Rational lo, Rational hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (lo_ > hi_) throw std::invalid_argument("interval with lo > hi");
  }

  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  Rational width() const { return hi_ - lo_; }
  bool contains(const Rational& v) const { return lo_ <= v && v <= hi_; }
  bool contains(const RatInterval& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }
  double mid_double() const { return rat::to_double((lo_ + hi_) / 2); }

  RatInterval operator+(const RatInterval& o) const;
  RatInterval operator-(const RatInterval& o) const;
  RatInterval operator*(const RatInterval& o) const;
  RatInterval operator/(const RatInterval& o) const;  // throws if 0 in o
  RatInterval operator-() const { return RatInterval(-hi_, -lo_); }

  RatInterval pow(unsigned k) const;

  // enclosure of sqrt with endpoint denominators 2^prec_bits; needs lo >= 0
  RatInterval sqrt_outward(unsigned prec_bits = 96) const;
  RatInterval root4_outward(unsigned prec_bits = 96) const;

  std::string str() const;

 private:
  Rational lo_{0}, hi_{0};
};

inline RatInterval operator*(const Rational& r, const RatInterval& x) {
  return RatInterval(r) * x;
}

// fixed named enclosure of Pi = pi/sqrt(3), width < 1e-35, built from the
// alternating rational series pi/sqrt3 = 2 sum (-1)^k / ((2k+1) 3^k)
const RatInterval& pi_over_sqrt3();
const RatInterval& sqrt3_enclosure();     // width < 1e-35
const RatInterval& pi_enclosure();        // pi_over_sqrt3 * sqrt3
const RatInterval& sqrt_e_enclosure();    // from the exp(1/2) series with tail bound

// enclosure of p with Pi replaced by the named pi/sqrt3 enclosure
RatInterval pipoly_eval(const PiPoly& p, const RatInterval& pi_sub = pi_over_sqrt3());

}  // namespace tbg
