#include "tbg/interval.hpp"

#include <algorithm>
#include <sstream>

namespace tbg {

RatInterval RatInterval::operator+(const RatInterval& o) const {
  return RatInterval(lo_ + o.lo_, hi_ + o.hi_);
}

RatInterval RatInterval::operator-(const RatInterval& o) const {
  return RatInterval(lo_ - o.hi_, hi_ - o.lo_);
}

RatInterval RatInterval::operator*(const RatInterval& o) const {
  Rational a = lo_ * o.lo_, b = lo_ * o.hi_, c = hi_ * o.lo_, d = hi_ * o.hi_;
  return RatInterval(std::min(std::min(a, b), std::min(c, d)),
                     std::max(std::max(a, b), std::max(c, d)));
}

RatInterval RatInterval::operator/(const RatInterval& o) const {
  if (o.lo_ <= 0 && o.hi_ >= 0)
    throw std::domain_error("interval division by interval containing zero");
  RatInterval inv(Rational(1) / o.hi_, Rational(1) / o.lo_);
  return *this * inv;
}

RatInterval RatInterval::pow(unsigned k) const {
  RatInterval acc(Rational(1));
  RatInterval base = *this;
  // even powers of sign-spanning intervals tightened via |x|
  if (k % 2 == 0 && lo_ < 0 && hi_ > 0) {
    Rational m = std::max(Rational(-lo_), hi_);
    RatInterval absed(Rational(0), m);
    for (unsigned i = 0; i < k; ++i) acc = acc * absed;
    return RatInterval(Rational(0), acc.hi());
  }
  unsigned i = k;
  while (i) {
    if (i & 1) acc = acc * base;
    base = base * base;
    i >>= 1;
  }
  return acc;
}

namespace {

// outward sqrt of a single nonnegative rational onto the 2^-s grid
std::pair<Rational, Rational> sqrt_brackets(const Rational& v, unsigned s) {
  if (v < 0) throw std::domain_error("sqrt of negative interval endpoint");
  // v * 4^s, floor/ceil, integer sqrt
  Integer scale = Integer(1) << (2 * s);
  Integer num = v.get_num() * scale;
  Integer f = rat::floor_div(num, v.get_den());
  Integer c = rat::ceil_div(num, v.get_den());
  Integer rf = rat::isqrt(f);           // rf^2 <= floor(v*4^s) <= v*4^s
  Integer rc = rat::isqrt(c);
  if (rc * rc < c) rc += 1;             // rc^2 >= ceil(v*4^s) >= v*4^s
  Rational lo(rf, Integer(1) << s);
  Rational hi(rc, Integer(1) << s);
  lo.canonicalize();
  hi.canonicalize();
  return {lo, hi};
}

}  // namespace

RatInterval RatInterval::sqrt_outward(unsigned prec_bits) const {
  auto lo_br = sqrt_brackets(lo_, prec_bits);
  auto hi_br = sqrt_brackets(hi_, prec_bits);
  return RatInterval(lo_br.first, hi_br.second);
}

RatInterval RatInterval::root4_outward(unsigned prec_bits) const {
  return sqrt_outward(prec_bits).sqrt_outward(prec_bits);
}

std::string RatInterval::str() const {
  std::ostringstream os;
  os << "[" << rat::str(lo_) << ", " << rat::str(hi_) << "]";
  return os.str();
}

namespace {

RatInterval compute_pi_over_sqrt3() {
  // alternating, strictly decreasing terms: partial sums bracket the limit
  Rational term_sum(0);
  Rational lo, hi;
  Integer pow3(1);
  const int K = 80;  // 3^-80 ~ 6.8e-39
  for (int k = 0; k <= K; ++k) {
    Rational term(2, (2 * k + 1));
    term /= Rational(pow3);
    if (k % 2 == 0) {
      term_sum += term;
      hi = term_sum;
    } else {
      term_sum -= term;
      lo = term_sum;
    }
    pow3 *= 3;
  }
  return RatInterval(lo, hi);
}

RatInterval compute_sqrt3() {
  return RatInterval(Rational(3)).sqrt_outward(128);
}

RatInterval compute_sqrt_e() {
  // exp(1/2) = sum (1/2)^n / n!, tail after N bounded by 2 * next term
  Rational sum(0);
  Rational term(1);
  const int N = 40;
  for (int n = 0; n <= N; ++n) {
    sum += term;
    term /= Rational(2 * (n + 1));
  }
  return RatInterval(sum, sum + 2 * term);
}

}  // namespace

const RatInterval& pi_over_sqrt3() {
  static const RatInterval v = compute_pi_over_sqrt3();
  return v;
}

const RatInterval& sqrt3_enclosure() {
  static const RatInterval v = compute_sqrt3();
  return v;
}

const RatInterval& pi_enclosure() {
  static const RatInterval v = pi_over_sqrt3() * sqrt3_enclosure();
  return v;
}

const RatInterval& sqrt_e_enclosure() {
  static const RatInterval v = compute_sqrt_e();
  return v;
}

RatInterval pipoly_eval(const PiPoly& p, const RatInterval& pi_sub) {
  RatInterval acc;
  for (int k = p.degree(); k >= 0; --k)
    acc = acc * pi_sub + RatInterval(p.coeff(k));
  return acc;
}

}  // namespace tbg
