#pragma once

// Regularized determinant det2(1 - a^2 A_k) and the certified existence proof
// of the first real magic angle: Plemelj-Smithies coefficients from exact
// traces, entire-function tail bounds, a certified Hilbert-Schmidt norm, and
// the integer-only inequality chain of the certificate.

#include <optional>
#include <string>
#include <vector>

#include "tbg/interval.hpp"
#include "tbg/traces.hpp"

namespace tbg {

struct DetPoly {
  std::vector<PiPoly> mu;  // mu[0..n]; mu[0] = 1, mu[1] = 0
  int order() const { return static_cast<int>(mu.size()) - 1; }

  // f(alpha) = sum_j mu_j (-alpha^2)^j / j! as an exact PiPoly in Pi
  PiPoly eval_pipoly(const Rational& alpha) const;
  RatInterval eval_interval(const Rational& alpha) const;
  // P(beta) = sum_j mu_j (-beta)^j / j! with beta = alpha^2, complex-double
  std::complex<double> eval_beta(std::complex<double> beta) const;
  std::vector<std::complex<double>> beta_coefficients() const;
};

// sigma_from_2[i] = sigma_{i+2}; computes mu_0..mu_n by the Newton-type
// recursion equivalent to the Plemelj-Smithies determinant
DetPoly plemelj_smithies(const std::vector<PiPoly>& sigma_from_2, int n);

// literal j x j determinant form, evaluated by interpolation; test oracle
PiPoly plemelj_smithies_det_oracle(const std::vector<PiPoly>& sigma_from_2, int j);

// elementary symmetric polynomials e_1..e_N from power sums p_1..p_N
std::vector<PiPoly> newton_elementary(const std::vector<PiPoly>& power_sums, int N);

struct MissingTraces : std::invalid_argument {
  explicit MissingTraces(const std::vector<int>& ells);
  std::vector<int> ells;
};

DetPoly det2_taylor(const TraceTable& table, int n);

// enclosure of the Taylor tail sum_{j=N}^inf d^m(sqrt(e) hs |a|^2 / sqrt(j))^j
// via the geometric majorant (2 nu/alpha)^m (nu/sqrtN)^{N-m} / (1 - nu/sqrtN),
// nu = sqrt(e) hs alpha^2, N = n+1. Throws std::domain_error when nu >= sqrtN.
RatInterval tail_bound(int n, int m, const Rational& hs, const Rational& alpha);

struct HsReport {
  int M = 0;
  RatInterval window_norm_sq;   // enclosure of tr(P_M A A* P_M)
  RatInterval tail_schatten;    // Schatten-4 chain ||(1-P_M) A||_2 bound
  RatInterval tail_direct;      // direct row-sum bound (sharper)
  RatInterval factor27;         // certified 27 * ||D^-1||_4 consolidation
  RatInterval tail_bound;       // min of the two chains
  Rational total;               // >= sqrt-upper(window) + tail upper
  std::string mode;             // "dyadic" | "exact"
};

// certified upper bound on ||A_0||_2 for the canonical potential: exact (or
// outward-rounded dyadic) window sum over |m|_inf <= M plus a certified
// lattice tail
HsReport hs_norm_certified(int M, const std::string& mode = "dyadic", int jobs = 1);

struct Certificate {
  RatInterval hs_window_bound;  // window norm enclosure (not squared)
  Rational hs_total_bound;
  int taylor_order = 16;
  RatInterval tail_r0, tail_r1;
  RatInterval f_left, f_right;
  RatInterval g_bound;
  std::pair<Rational, Rational> interval;  // (0.583, 0.589)
  Rational op_norm_bound;                  // 9; no root below alpha = 1/3
  Rational alpha_lower;                    // 1/3
  bool verdict = false;
  std::vector<std::string> failures;       // named failed inequalities

  std::string to_json() const;
  static Certificate from_json(const std::string& text);
  bool operator==(const Certificate&) const;
};

// evaluates every inequality of the existence proof; requires sigma_2..sigma_n
Certificate certify_first_magic(const TraceTable& table, const HsReport& hs,
                                int taylor_order = 16);

// re-verify a stored report with rational comparisons only
bool recheck_certificate(const std::string& json_text);

}  // namespace tbg
