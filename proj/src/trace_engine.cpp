#include "tbg/traces.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <unordered_map>

namespace tbg {

namespace {

// -(2 i omega sqrt3 / 9): converts the weighted residue sum into tau/Pi
Cyclo residue_sum_prefactor() {
  Cyclo f = Cyclo::imag_unit() * Cyclo::omega() * Cyclo::sqrt3();
  return -f.scaled(Rational(2, 9));
}

struct PoleContext {
  Cyclo location;
  // per-site resolvent inverses at the expansion point; nullopt marks the
  // singular site (exact 1/t factor)
  std::unordered_map<std::int64_t, std::optional<Cyclo>> outer, inner;

  const std::optional<Cyclo>& outer_inv(int m, int n) {
    auto key = pack_site(m, n);
    auto it = outer.find(key);
    if (it != outer.end()) return it->second;
    Cyclo c = location + Rational(3) * gamma_ab(m, n) + Cyclo::mu();
    std::optional<Cyclo> v;
    if (!c.is_zero()) v = c.inv();
    return outer.emplace(key, std::move(v)).first->second;
  }
  const std::optional<Cyclo>& inner_inv(int m, int n) {
    auto key = pack_site(m, n);
    auto it = inner.find(key);
    if (it != inner.end()) return it->second;
    Cyclo c = location + Rational(3) * gamma_ab(m, n) + Rational(2) * Cyclo::mu();
    std::optional<Cyclo> v;
    if (!c.is_zero()) v = c.inv();
    return inner.emplace(key, std::move(v)).first->second;
  }
};

LaurentSeries divide_resolvent(const LaurentSeries& s, const std::optional<Cyclo>& cinv) {
  if (!cinv) return s.div_linear(Cyclo::zero());
  // y_o = (x_o - y_{o-1}) * cinv without re-inverting
  if (s.is_zero()) return s;
  LaurentSeries out(s.window_lo(), s.window_hi());
  std::vector<Cyclo> c(s.window_hi() - s.min_order() + 1);
  Cyclo prev = Cyclo::zero();
  for (int o = s.min_order(); o <= s.window_hi(); ++o) {
    Cyclo y = (s.coeff(o) - prev) * (*cinv);
    c[o - s.min_order()] = y;
    prev = y;
  }
  return LaurentSeries::from_coeffs(s.min_order(), std::move(c), s.window_lo(),
                                    s.window_hi());
}

}  // namespace

Cyclo PoleSite::location() const {
  return -(Rational(3) * gamma_ab(a, b) + Rational(family) * Cyclo::mu());
}

std::vector<PoleSite> candidate_poles(const Stencil& st, int ell) {
  auto reach = reach_sets(st, ell / 2);
  const auto& feas = reach[ell / 2];  // reach sets are nested since 0 is a shift
  std::vector<PoleSite> poles;
  for (auto key : feas) {
    auto [m, n] = unpack_site(key);
    poles.push_back({1, m, n});
  }
  auto offs = st.inner_offsets();
  std::unordered_set<std::int64_t> minus_seen;
  for (auto key : feas) {
    auto [m, n] = unpack_site(key);
    for (const auto& off : offs) {
      auto k2 = pack_site(m + off.first, n + off.second);
      if (minus_seen.insert(k2).second)
        poles.push_back({2, m + off.first, n + off.second});
    }
  }
  std::sort(poles.begin(), poles.end());
  return poles;
}

Cyclo residue_at_pole(const Stencil& st, int ell, const PoleSite& pole) {
  PoleContext ctx;
  ctx.location = pole.location();
  auto terms = st.merged();
  auto reach = reach_sets(st, ell);

  const int wlo = -ell;
  std::unordered_map<std::int64_t, LaurentSeries> state;
  state.emplace(pack_site(0, 0), LaurentSeries::constant(Cyclo::one(), wlo, ell - 1));

  for (int j = 1; j <= ell; ++j) {
    const int hi = ell - j - 1;
    const auto& fwd = reach[j];
    const auto& back = reach[ell - j];
    std::unordered_map<std::int64_t, LaurentSeries> next;
    next.reserve(state.size() * 2);
    for (const auto& [ykey, series] : state) {
      auto [ym, yn] = unpack_site(ykey);
      for (const auto& t : terms) {
        int xm = ym - t.net_shift.first, xn = yn - t.net_shift.second;
        auto xkey = pack_site(xm, xn);
        if (!fwd.count(xkey) || !back.count(xkey)) continue;
        LaurentSeries w = series.scaled(t.coeff);
        w = divide_resolvent(w, ctx.inner_inv(xm + t.inner_offset.first,
                                              xn + t.inner_offset.second));
        w = divide_resolvent(w, ctx.outer_inv(xm, xn));
        w = w.truncated(hi);
        if (w.is_zero()) continue;
        auto it = next.find(xkey);
        if (it == next.end())
          next.emplace(xkey, std::move(w));
        else
          it->second.add_in_place(w);
      }
    }
    state = std::move(next);
  }

  auto it = state.find(pack_site(0, 0));
  if (it == state.end()) return Cyclo::zero();
  return it->second.coeff(-1);
}

std::vector<std::pair<PoleSite, Cyclo>> pole_residues(const Stencil& st, int ell,
                                                      int jobs) {
  auto poles = candidate_poles(st, ell);
  std::vector<Cyclo> res(poles.size());
  if (jobs < 1) jobs = 1;
  jobs = std::min<int>(jobs, static_cast<int>(poles.size()));
  if (jobs <= 1) {
    for (size_t i = 0; i < poles.size(); ++i) res[i] = residue_at_pole(st, ell, poles[i]);
  } else {
    std::atomic<size_t> cursor{0};
    auto worker = [&] {
      for (;;) {
        size_t i = cursor.fetch_add(1);
        if (i >= poles.size()) return;
        res[i] = residue_at_pole(st, ell, poles[i]);
      }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  std::vector<std::pair<PoleSite, Cyclo>> out;
  out.reserve(poles.size());
  for (size_t i = 0; i < poles.size(); ++i) out.emplace_back(poles[i], std::move(res[i]));
  return out;
}

Cyclo trace_exact_coeff(const Potential& p, int ell, int jobs) {
  if (ell < 2) throw std::invalid_argument("trace_exact requires ell >= 2");
  Stencil st = build_stencil(p);
  Cyclo sum = Cyclo::zero();
  for (const auto& [pole, res] : pole_residues(st, ell, jobs))
    sum += res.scaled(Rational(pole.eps()));
  return residue_sum_prefactor() * sum;
}

PiPoly trace_exact(const Potential& p, int ell, int jobs) {
  Cyclo q = trace_exact_coeff(p, ell, jobs);
  if (p.reality_flag && !q.is_rational())
    throw std::logic_error("trace rationality assertion failed at ell=" +
                           std::to_string(ell) + ": " + q.str());
  if (!q.is_rational())
    throw std::domain_error("trace is not a rational multiple of pi/sqrt3");
  return PiPoly::monomial(q.rational_part(), 1);
}

PiPoly trace_T_even(const Potential& p, int two_ell, int jobs) {
  if (two_ell < 4 || two_ell % 2 != 0)
    throw std::invalid_argument("trace_T_even requires an even power >= 4 "
                                "(odd traces of T_k vanish)");
  return trace_exact(p, two_ell / 2, jobs).scaled(Rational(2));
}

bool TraceTable::has_range(int lo, int hi) const {
  for (int l = lo; l <= hi; ++l)
    if (!entries.count(l)) return false;
  return true;
}

std::vector<int> TraceTable::missing(int lo, int hi) const {
  std::vector<int> out;
  for (int l = lo; l <= hi; ++l)
    if (!entries.count(l)) out.push_back(l);
  return out;
}

TraceTable compute_traces(const Potential& p, int ell_max, int jobs, TraceTable seed) {
  TraceTable t = std::move(seed);
  t.potential_digest = p.digest();
  for (int l = 2; l <= ell_max; ++l) {
    if (t.entries.count(l)) continue;
    t.entries[l] = trace_exact(p, l, jobs);
    t.provenance[l] = "engine";
  }
  return t;
}

}  // namespace tbg
