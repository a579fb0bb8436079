#include "tbg/pipoly.hpp"

#include <sstream>

namespace tbg {

void PiPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

PiPoly PiPoly::monomial(Rational q, int k) {
  std::vector<Rational> c(k + 1);
  c[k] = std::move(q);
  return PiPoly(std::move(c));
}

PiPoly PiPoly::operator+(const PiPoly& o) const {
  std::vector<Rational> c(std::max(c_.size(), o.c_.size()));
  for (size_t i = 0; i < c.size(); ++i) {
    if (i < c_.size()) c[i] += c_[i];
    if (i < o.c_.size()) c[i] += o.c_[i];
  }
  return PiPoly(std::move(c));
}

PiPoly PiPoly::operator-(const PiPoly& o) const { return *this + (-o); }

PiPoly PiPoly::operator-() const {
  std::vector<Rational> c(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) c[i] = -c_[i];
  return PiPoly(std::move(c));
}

PiPoly PiPoly::operator*(const PiPoly& o) const {
  if (c_.empty() || o.c_.empty()) return PiPoly();
  std::vector<Rational> c(c_.size() + o.c_.size() - 1);
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (size_t j = 0; j < o.c_.size(); ++j) c[i + j] += c_[i] * o.c_[j];
  }
  return PiPoly(std::move(c));
}

PiPoly PiPoly::scaled(const Rational& r) const {
  std::vector<Rational> c(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) c[i] = c_[i] * r;
  return PiPoly(std::move(c));
}

double PiPoly::eval_double(double x) const {
  double acc = 0.0;
  for (size_t i = c_.size(); i-- > 0;) acc = acc * x + rat::to_double(c_[i]);
  return acc;
}

std::vector<std::string> PiPoly::serialize() const {
  std::vector<std::string> s;
  s.reserve(c_.size());
  for (const auto& q : c_) s.push_back(rat::str(q));
  return s;
}

PiPoly PiPoly::deserialize(const std::vector<std::string>& s) {
  std::vector<Rational> c;
  c.reserve(s.size());
  for (const auto& t : s) c.push_back(rat::parse(t));
  return PiPoly(std::move(c));
}

std::string PiPoly::str() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t k = 0; k < c_.size(); ++k) {
    if (c_[k] == 0) continue;
    if (!first) os << " + ";
    os << rat::str(c_[k]);
    if (k == 1) os << " * Pi";
    if (k > 1) os << " * Pi^" << k;
    first = false;
  }
  return os.str();
}

}  // namespace tbg
