#include "tbg/traces.hpp"

#include <cmath>
#include <numbers>
#include <unordered_map>

namespace tbg {

namespace {

std::complex<double> gamma_c(double a, double b) {
  const std::complex<double> w = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
  return w * w * a - w * b;
}

std::complex<double> mu_c() { return gamma_c(1, 1); }

struct NumericStencil {
  struct Term {
    int dm, dn, om, on;
    std::complex<double> coeff;
  };
  std::vector<Term> terms;
  int max_shift = 0;

  explicit NumericStencil(const Stencil& st) {
    for (const auto& t : st.merged()) {
      terms.push_back({t.net_shift.first, t.net_shift.second, t.inner_offset.first,
                       t.inner_offset.second, t.coeff.to_complex()});
      max_shift = std::max({max_shift, std::abs(t.net_shift.first),
                            std::abs(t.net_shift.second)});
    }
  }
};

void check_pole_distance(std::complex<double> k, int M, int extra) {
  // k must keep distance >= 1e-3 from every window pole of both families
  const double tol = 1e-3;
  for (int m = -M - extra; m <= M + extra; ++m) {
    for (int n = -M - extra; n <= M + extra; ++n) {
      for (int fam = 1; fam <= 2; ++fam) {
        std::complex<double> pole = -3.0 * gamma_c(m, n) - double(fam) * mu_c();
        if (std::abs(k - pole) < tol)
          throw PoleError("k within 1e-3 of a window pole");
      }
    }
  }
}

}  // namespace

std::complex<double> trace_numeric(const Potential& p, int ell,
                                   std::complex<double> k, int M) {
  if (ell < 2) throw std::invalid_argument("trace_numeric requires ell >= 2");
  if (M < 4 * ell) throw std::invalid_argument("trace_numeric requires M >= 4*ell");
  Stencil st = build_stencil(p);
  NumericStencil ns(st);
  check_pole_distance(k, M, ns.max_shift);

  // local propagation of <e_x, (P_M A P_M)^ell e_x> per window site
  const int R = ns.max_shift * ell;  // support radius around x
  const int W = 2 * R + 1;
  std::vector<std::complex<double>> cur(W * W), nxt(W * W);
  std::complex<double> total = 0.0;

  for (int xm = -M; xm <= M; ++xm) {
    for (int xn = -M; xn <= M; ++xn) {
      std::fill(cur.begin(), cur.end(), std::complex<double>(0.0));
      cur[R * W + R] = 1.0;
      for (int j = 0; j < ell; ++j) {
        std::fill(nxt.begin(), nxt.end(), std::complex<double>(0.0));
        int rad = ns.max_shift * j;  // current support
        for (int um = -rad; um <= rad; ++um) {
          for (int un = -rad; un <= rad; ++un) {
            std::complex<double> v = cur[(um + R) * W + (un + R)];
            if (v == 0.0) continue;
            for (const auto& t : ns.terms) {
              int tm = um - t.dm, tn = un - t.dn;  // target offset from x
              int gm = xm + tm, gn = xn + tn;      // global target site
              if (std::abs(gm) > M || std::abs(gn) > M) continue;
              std::complex<double> lo = 1.0 / (k + 3.0 * gamma_c(gm, gn) + mu_c());
              std::complex<double> li =
                  1.0 / (k + 3.0 * gamma_c(gm + t.om, gn + t.on) + 2.0 * mu_c());
              nxt[(tm + R) * W + (tn + R)] += t.coeff * lo * li * v;
            }
          }
        }
        std::swap(cur, nxt);
      }
      total += cur[R * W + R];
    }
  }
  return total;
}

std::vector<std::complex<double>> sigma1_regularized(const Potential& p, int n_max) {
  if (n_max < 1) throw std::invalid_argument("sigma1_regularized requires n_max >= 1");
  std::vector<std::complex<double>> out;
  out.reserve(n_max + 1);
  if (p.empty()) {
    out.assign(n_max + 1, 0.0);
    return out;
  }
  Stencil st = build_stencil(p);
  NumericStencil ns(st);
  std::complex<double> running = 0.0;
  for (int n = 0; n <= n_max; ++n) {
    // add the diagonal over the ring |m|_inf == n
    for (int m = -n; m <= n; ++m) {
      for (int q = -n; q <= n; ++q) {
        if (std::max(std::abs(m), std::abs(q)) != n) continue;
        std::complex<double> lo = 1.0 / (3.0 * gamma_c(m, q) + mu_c());
        std::complex<double> acc = 0.0;
        for (const auto& t : ns.terms) {
          if (t.dm != 0 || t.dn != 0) continue;
          acc += t.coeff / (3.0 * gamma_c(m + t.om, q + t.on) + 2.0 * mu_c());
        }
        running += lo * acc;
      }
    }
    out.push_back(running);
  }
  return out;
}

}  // namespace tbg
