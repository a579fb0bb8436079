#include "tbg/cyclo.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace tbg {

bool Cyclo::is_zero() const {
  return c_[0] == 0 && c_[1] == 0 && c_[2] == 0 && c_[3] == 0;
}

bool Cyclo::is_rational() const {
  return c_[1] == 0 && c_[2] == 0 && c_[3] == 0;
}

Cyclo Cyclo::operator+(const Cyclo& o) const {
  Cyclo r(*this);
  r += o;
  return r;
}

Cyclo Cyclo::operator-(const Cyclo& o) const {
  Cyclo r(*this);
  r -= o;
  return r;
}

Cyclo Cyclo::operator-() const {
  return Cyclo(-c_[0], -c_[1], -c_[2], -c_[3]);
}

Cyclo& Cyclo::operator+=(const Cyclo& o) {
  for (int k = 0; k < 4; ++k) c_[k] += o.c_[k];
  return *this;
}

Cyclo& Cyclo::operator-=(const Cyclo& o) {
  for (int k = 0; k < 4; ++k) c_[k] -= o.c_[k];
  return *this;
}

Cyclo Cyclo::operator*(const Cyclo& o) const {
  // schoolbook convolution, then reduce z^4 = z^2-1, z^5 = z^3-z, z^6 = -1
  Rational h[7];
  for (int i = 0; i < 4; ++i) {
    if (c_[i] == 0) continue;
    for (int j = 0; j < 4; ++j) {
      if (o.c_[j] == 0) continue;
      h[i + j] += c_[i] * o.c_[j];
    }
  }
  return Cyclo(h[0] - h[4] - h[6], h[1] - h[5], h[2] + h[4], h[3] + h[5]);
}

Cyclo Cyclo::scaled(const Rational& r) const {
  return Cyclo(c_[0] * r, c_[1] * r, c_[2] * r, c_[3] * r);
}

Cyclo Cyclo::conj() const {
  // 1 -> 1, z -> z - z^3, z^2 -> 1 - z^2, z^3 -> -z^3
  return Cyclo(c_[0] + c_[2], c_[1], -c_[2], -c_[1] - c_[3]);
}

std::pair<Rational, Rational> Cyclo::abs_sq_parts() const {
  Cyclo n = *this * conj();
  // fixed by conj <=> shape u + v*(2z - z^3)
  if (!(n.c_[2] == 0 && n.c_[1] == -2 * n.c_[3]))
    throw std::logic_error("z*conj(z) not in Q(sqrt3)");
  return {n.c_[0], -n.c_[3]};
}

Rational Cyclo::abs_sq_rational() const {
  auto [u, v] = abs_sq_parts();
  if (v != 0) throw std::domain_error("|z|^2 is irrational");
  return u;
}

Cyclo Cyclo::inv() const {
  if (is_zero()) throw std::domain_error("division by zero in Q(zeta12)");
  auto [u, v] = abs_sq_parts();
  // 1/(u + v sqrt3) = (u - v sqrt3)/(u^2 - 3 v^2)
  Rational d = u * u - 3 * v * v;
  Cyclo real_inv(u / d, -2 * v / d, Rational(0), v / d);
  return conj() * real_inv;
}

std::complex<double> Cyclo::to_complex() const {
  static const std::complex<double> z = std::polar(1.0, std::numbers::pi / 6.0);
  std::complex<double> acc(0.0, 0.0), p(1.0, 0.0);
  for (int k = 0; k < 4; ++k) {
    acc += rat::to_double(c_[k]) * p;
    p *= z;
  }
  return acc;
}

std::array<std::string, 4> Cyclo::serialize() const {
  return {rat::str(c_[0]), rat::str(c_[1]), rat::str(c_[2]), rat::str(c_[3])};
}

Cyclo Cyclo::deserialize(const std::array<std::string, 4>& s) {
  return Cyclo(rat::parse(s[0]), rat::parse(s[1]), rat::parse(s[2]), rat::parse(s[3]));
}

std::string Cyclo::str() const {
  std::ostringstream os;
  os << "[" << rat::str(c_[0]) << ", " << rat::str(c_[1]) << ", "
     << rat::str(c_[2]) << ", " << rat::str(c_[3]) << "]";
  return os.str();
}

Cyclo gamma_ab(long a, long b) {
  // omega^2 a - omega b = b - (a+b) zeta^2
  return Cyclo(Rational(b), Rational(0), Rational(-(a + b)), Rational(0));
}

}  // namespace tbg
