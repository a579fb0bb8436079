#include "tbg/rational.hpp"

#include <cctype>

namespace tbg {
namespace rat {

Rational parse(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational string");
  std::string t;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  auto slash = t.find('/');
  auto check_int = [](const std::string& u) {
    if (u.empty()) return false;
    size_t i = (u[0] == '-' || u[0] == '+') ? 1 : 0;
    if (i == u.size()) return false;
    for (; i < u.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(u[i]))) return false;
    return true;
  };
  Rational r;
  if (slash == std::string::npos) {
    if (!check_int(t)) throw std::invalid_argument("bad rational: " + s);
    r = Rational(Integer(t));
  } else {
    std::string num = t.substr(0, slash), den = t.substr(slash + 1);
    if (!check_int(num) || !check_int(den))
      throw std::invalid_argument("bad rational: " + s);
    Integer d(den);
    if (d == 0) throw std::invalid_argument("zero denominator: " + s);
    r = Rational(Integer(num), d);
  }
  r.canonicalize();
  return r;
}

std::string str(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Integer floor_div(const Integer& num, const Integer& den) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return q;
}

Integer ceil_div(const Integer& num, const Integer& den) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return q;
}

Integer isqrt(const Integer& v) {
  if (v < 0) throw std::domain_error("isqrt of negative");
  Integer r;
  mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
  return r;
}

double to_double(const Rational& r) { return r.get_d(); }

}  // namespace rat
}  // namespace tbg
