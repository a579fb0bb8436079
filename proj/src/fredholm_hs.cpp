#include "tbg/fredholm.hpp"

#include <thread>

namespace tbg {

namespace {

// Sum over a coset of the spacing-3 triangular lattice with |gamma|^2 >= R0_sq
// of 1/|gamma|^4, bounded by the Voronoi-cell comparison: cells are hexagons
// of area 9 sqrt3/2 and circumradius sqrt3, so
//   sum f(|gamma|) <= (2/(9 sqrt3)) * 2 pi * int_{u0}^inf (u + sqrt3) f(u) du,
// u0 = sqrt(R0_sq) - 2 sqrt3, valid for decreasing f.
RatInterval hexcell_inv4_tail(const Rational& r0_sq) {
  RatInterval s3 = sqrt3_enclosure();
  RatInterval u0 = RatInterval(r0_sq).sqrt_outward() - RatInterval(rat::of(2, 1)) * s3;
  if (u0.lo() <= 0) throw std::domain_error("hexcell tail: window too small");
  RatInterval pref = (RatInterval(rat::of(4, 9)) * pi_enclosure()) / s3;
  // int (u+sqrt3)/u^4 du = 1/(2 u0^2) + sqrt3/(3 u0^3)
  RatInterval integral = RatInterval(rat::of(1, 2)) / u0.pow(2) +
                         (s3 / RatInterval(Rational(3))) / u0.pow(3);
  return pref * integral;
}

// same comparison for f(r) = 1/(r^2 (r - sqrt3)^2), majorized on [u0, inf) by
// K/u^3 with K = (1 + sqrt3/u0) / (1 - sqrt3/u0)^2
RatInterval hexcell_mixed_tail(const Rational& r0_sq) {
  RatInterval s3 = sqrt3_enclosure();
  RatInterval u0 = RatInterval(r0_sq).sqrt_outward() - RatInterval(rat::of(2, 1)) * s3;
  RatInterval ratio = s3 / u0;
  if (ratio.hi() >= 1) throw std::domain_error("hexcell tail: window too small");
  RatInterval one(Rational(1));
  RatInterval K = (one + ratio) / (one - ratio).pow(2);
  RatInterval pref = (RatInterval(rat::of(4, 9)) * pi_enclosure()) / s3;
  return pref * K / (RatInterval(rat::of(2, 1)) * u0.pow(2));
}

// g(m,n) = ((3m+2)^2 + (3m+2)(3n+2) + (3n+2)^2)/3, the (2,2)-site norm
Integer g_minus(long m, long n) {
  Integer A = 3 * m + 2, B = 3 * n + 2;
  return (A * A + A * B + B * B) / 3;
}

Rational exact_g_window_sum(int K) {
  Rational s(0);
  for (long m = -K; m <= K; ++m)
    for (long n = -K; n <= K; ++n) {
      Integer g = g_minus(m, n);
      s += Rational(1) / Rational(g * g);
    }
  return s;
}

struct WindowAccum {
  Rational u{0}, v{0};       // exact mode: sum = u + v sqrt3
  Integer dy_lo{0}, dy_hi{0};  // dyadic mode: 2^-64-scaled enclosure
};

constexpr unsigned kDyadicBits = 64;

void accumulate_site(long m, long n, const std::vector<StencilTerm>& merged,
                     bool exact, WindowAccum& acc) {
  Cyclo out = (Rational(3) * gamma_ab(m, n) + Cyclo::mu()).inv();
  // inner inverses keyed by the (few) distinct offsets
  std::vector<std::pair<Site, Cyclo>> inner;
  auto inner_inv = [&](const Site& off) -> const Cyclo& {
    for (auto& [o, c] : inner)
      if (o == off) return c;
    Cyclo c = (Rational(3) * gamma_ab(m + off.first, n + off.second) +
               Rational(2) * Cyclo::mu())
                  .inv();
    inner.emplace_back(off, std::move(c));
    return inner.back().second;
  };
  // group by net shift: entries of the row at x
  Rational su(0), sv(0);
  std::vector<std::pair<Site, Cyclo>> rows;
  for (const auto& t : merged) {
    Cyclo val = t.coeff * out * inner_inv(t.inner_offset);
    bool found = false;
    for (auto& [d, v] : rows)
      if (d == t.net_shift) {
        v += val;
        found = true;
        break;
      }
    if (!found) rows.emplace_back(t.net_shift, std::move(val));
  }
  for (const auto& [d, v] : rows) {
    auto [u2, v2] = v.abs_sq_parts();
    su += u2;
    sv += v2;
  }
  if (exact) {
    acc.u += su;
    acc.v += sv;
  } else {
    RatInterval site = RatInterval(su) + RatInterval(sv) * sqrt3_enclosure();
    Integer scale = Integer(1) << kDyadicBits;
    acc.dy_lo += rat::floor_div(site.lo().get_num() * scale, site.lo().get_den());
    acc.dy_hi += rat::ceil_div(site.hi().get_num() * scale, site.hi().get_den());
  }
}

}  // namespace

HsReport hs_norm_certified(int M, const std::string& mode, int jobs) {
  if (M < 1) throw std::invalid_argument("hs_norm_certified requires M >= 1");
  bool exact = (mode == "exact");
  if (!exact && mode != "dyadic")
    throw std::invalid_argument("hs mode must be 'dyadic' or 'exact'");
  auto merged = build_stencil(canonical_potential()).merged();

  // window term: rows |m|_inf <= M, all columns; rows partitioned round-robin
  if (jobs < 1) jobs = 1;
  std::vector<WindowAccum> acc(jobs);
  {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) {
      pool.emplace_back([&, t] {
        for (long m = -M + t; m <= M; m += jobs)
          for (long n = -M; n <= M; ++n) accumulate_site(m, n, merged, exact, acc[t]);
      });
    }
    for (auto& th : pool) th.join();
  }

  HsReport rep;
  rep.M = M;
  rep.mode = exact ? "exact" : "dyadic";
  if (exact) {
    Rational u(0), v(0);
    for (const auto& a : acc) {
      u += a.u;
      v += a.v;
    }
    rep.window_norm_sq = RatInterval(u) + RatInterval(v) * sqrt3_enclosure();
  } else {
    Integer lo(0), hi(0);
    for (const auto& a : acc) {
      lo += a.dy_lo;
      hi += a.dy_hi;
    }
    Integer scale = Integer(1) << kDyadicBits;
    Rational rlo(lo, scale), rhi(hi, scale);
    rlo.canonicalize();
    rhi.canonicalize();
    rep.window_norm_sq = RatInterval(rlo, rhi);
  }

  // Schatten-4 chain: ||(1-P_M) A||_2 <= 27 ||Lambda^{(2,2)}||_4 ||(1-P_M) Lambda||_4
  const int K = 40;
  Rational sK = exact_g_window_sum(K);
  RatInterval g_rem = RatInterval(Rational(9)) *
                      hexcell_inv4_tail(rat::of(3, 4) * Rational((3 * K + 1)) *
                                        Rational((3 * K + 1)));
  RatInterval c4 = ((RatInterval(sK) + g_rem) / RatInterval(Rational(9))).root4_outward();
  rep.factor27 = RatInterval(Rational(27)) * c4;
  RatInterval lam4_tail =
      hexcell_inv4_tail(rat::of(3, 4) * Rational(3 * M + 2) * Rational(3 * M + 2));
  rep.tail_schatten = rep.factor27 * lam4_tail.root4_outward();

  // direct chain: row sums outside the window obey
  //   sum_y |A(x,y)|^2 <= 135 / (|gamma_X|^2 (|gamma_X| - sqrt3)^2)
  RatInterval direct_sq =
      RatInterval(Rational(135)) *
      hexcell_mixed_tail(rat::of(3, 4) * Rational(3 * M + 2) * Rational(3 * M + 2));
  rep.tail_direct = direct_sq.sqrt_outward();

  rep.tail_bound = (rep.tail_direct.hi() <= rep.tail_schatten.hi()) ? rep.tail_direct
                                                                    : rep.tail_schatten;
  rep.total = rep.window_norm_sq.sqrt_outward().hi() + rep.tail_bound.hi();
  return rep;
}

}  // namespace tbg
