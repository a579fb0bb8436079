#include "tbg/traces.hpp"

#include <map>

#include "tbg/walks.hpp"

namespace tbg {

namespace {

Cyclo residue_sum_prefactor() {
  Cyclo f = Cyclo::imag_unit() * Cyclo::omega() * Cyclo::sqrt3();
  return -f.scaled(Rational(2, 9));
}

Rational factorial(int n) {
  Rational r(1);
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

Rational binomial(int n, int k) {
  Rational r(1);
  for (int i = 0; i < k; ++i) r *= rat::of(n - i, i + 1);
  return r;
}

Cyclo pow_cyclo(const Cyclo& c, int n) {
  Cyclo r = Cyclo::one();
  for (int i = 0; i < n; ++i) r *= c;
  return r;
}

// weighted residue sum of f_pi = coeff * prod (k - p_L)^{-m_L} over the
// walk's distinct pole labels, higher-order poles by exact differentiation
// of the cofactor product
Cyclo walk_residue_sum(const Walk& w) {
  std::map<std::pair<long, long>, int> mult;
  for (const auto& pref : w.prefix) {
    mult[{pref[0], pref[1]}] += 1;  // (alpha~, beta~)
    mult[{pref[2], pref[3]}] += 1;  // (gamma~, delta~)
  }
  std::map<std::pair<long, long>, Cyclo> loc;
  for (const auto& [lab, m] : mult)
    loc[lab] = -(gamma_ab(lab.first, lab.second) + Cyclo::mu());

  Cyclo total = Cyclo::zero();
  for (const auto& [lab, m] : mult) {
    const Cyclo& p = loc[lab];
    // H^{(j)}(p) for the log-derivative H = sum -m_L / (k - p_L), L != lab;
    // H^{(j)} = sum -m_L (-1)^j j! / (p - p_L)^{j+1}, needed for j <= m-2
    std::vector<Cyclo> H(m >= 2 ? m - 1 : 0, Cyclo::zero());
    Cyclo G0 = Cyclo::one();
    for (const auto& [lab2, m2] : mult) {
      if (lab2 == lab) continue;
      Cyclo dinv = (p - loc[lab2]).inv();
      G0 *= pow_cyclo(dinv, m2);
      Cyclo dp = dinv;
      for (int j = 0; j + 2 <= m; ++j) {
        Rational c = Rational(-m2) * ((j % 2 == 0) ? factorial(j) : -factorial(j));
        H[j] += dp.scaled(c);
        dp *= dinv;
      }
    }
    // G^{(r)} = sum_i C(r-1,i) G^{(i)} H^{(r-1-i)}
    std::vector<Cyclo> G{G0};
    for (int r = 1; r <= m - 1; ++r) {
      Cyclo acc = Cyclo::zero();
      for (int i = 0; i < r; ++i)
        acc += (G[i] * H[r - 1 - i]).scaled(binomial(r - 1, i));
      G.push_back(acc);
    }
    Cyclo res = (w.coeff * G[m - 1]).scaled(Rational(1) / factorial(m - 1));
    total += res.scaled(Rational(lab.second));  // eps = second label coordinate
  }
  return total;
}

}  // namespace

Cyclo trace_oracle_walks_coeff(const Potential& p, int ell) {
  if (ell < 2 || ell > 4)
    throw std::invalid_argument("trace_oracle_walks cost guard: need 2 <= ell <= 4");
  Stencil st = build_stencil(p);
  Cyclo sum = Cyclo::zero();
  enumerate_theta(ell, st, [&sum](const Walk& w) { sum += walk_residue_sum(w); });
  return residue_sum_prefactor() * sum;
}

PiPoly trace_oracle_walks(const Potential& p, int ell) {
  Cyclo q = trace_oracle_walks_coeff(p, ell);
  if (!q.is_rational())
    throw std::domain_error("oracle trace is not a rational multiple of pi/sqrt3");
  return PiPoly::monomial(q.rational_part(), 1);
}

}  // namespace tbg
