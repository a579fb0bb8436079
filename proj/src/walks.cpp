#include "tbg/walks.hpp"

#include <map>
#include <stdexcept>

namespace tbg {

namespace {

struct Enumerator {
  int ell;
  const std::vector<std::pair<Site, Cyclo>>& plus;
  const std::vector<std::pair<Site, Cyclo>>& minus;
  int max_step;
  const std::function<void(const Walk&)>& fn;

  std::vector<Site> ps, ms;
  long off1 = 0, off2 = 0;

  bool returnable(int steps_left) const {
    long bound = static_cast<long>(steps_left) * max_step;
    return std::abs(off1) <= bound && std::abs(off2) <= bound;
  }

  void rec(int i) {
    if (i == ell) {
      if (off1 != 0 || off2 != 0) return;
      emit();
      return;
    }
    for (const auto& [s, cs] : plus) {
      off1 += s.first;
      off2 += s.second;
      if (returnable(2 * (ell - i) - 1)) {
        for (const auto& [t, ct] : minus) {
          off1 += t.first;
          off2 += t.second;
          if (returnable(2 * (ell - i) - 2)) {
            ps.push_back(s);
            ms.push_back(t);
            rec(i + 1);
            ps.pop_back();
            ms.pop_back();
          }
          off1 -= t.first;
          off2 -= t.second;
        }
      }
      off1 -= s.first;
      off2 -= s.second;
    }
  }

  void emit() const {
    Walk w;
    w.plus_steps = ps;
    w.minus_steps = ms;
    w.coeff = Cyclo::one();
    long ca = 0, cb = 0, msum = 0;
    for (int i = 0; i < ell; ++i) {
      w.prefix.push_back({ca, cb, ca + ps[i].first, cb + ps[i].second});
      msum += ms[i].first + ps[i].second;
      ca += ps[i].first + ms[i].first;
      cb += ps[i].second + ms[i].second;
      for (const auto& [s, c] : plus)
        if (s == ps[i]) w.coeff *= c;
      for (const auto& [t, c] : minus)
        if (t == ms[i]) w.coeff *= c;
    }
    if (msum % 3 != 0)
      throw std::logic_error("closed walk with sum(gamma_i + beta_i) not divisible by 3");
    w.m_pi = 2 * (msum / 3);
    fn(w);
  }
};

long max_step_norm(const Stencil& st) {
  long m = 0;
  for (const auto& [s, c] : st.plus_layer)
    m = std::max({m, std::labs(s.first), std::labs(s.second)});
  for (const auto& [t, c] : st.minus_layer)
    m = std::max({m, std::labs(t.first), std::labs(t.second)});
  return m;
}

}  // namespace

void enumerate_theta(int ell, const Stencil& st,
                     const std::function<void(const Walk&)>& fn) {
  if (ell < 1) throw std::invalid_argument("enumerate_theta requires ell >= 1");
  Enumerator e{ell, st.plus_layer, st.minus_layer, static_cast<int>(max_step_norm(st)), fn};
  e.rec(0);
}

std::size_t count_theta(int ell, const Stencil& st) {
  std::size_t n = 0;
  enumerate_theta(ell, st, [&n](const Walk&) { ++n; });
  return n;
}

std::size_t count_theta_dp(int ell, const Stencil& st) {
  // convolve 2*ell alternating step-count tables, track the running offset
  std::map<Site, std::size_t> cur{{{0, 0}, 1}};
  for (int i = 0; i < 2 * ell; ++i) {
    const auto& layer = (i % 2 == 0) ? st.plus_layer : st.minus_layer;
    int left = 2 * ell - i - 1;
    long bound = static_cast<long>(left) * max_step_norm(st);
    std::map<Site, std::size_t> next;
    for (const auto& [off, cnt] : cur) {
      for (const auto& [s, c] : layer) {
        Site o{off.first + s.first, off.second + s.second};
        if (std::abs(o.first) > bound || std::abs(o.second) > bound) continue;
        next[o] += cnt;
      }
    }
    cur = std::move(next);
  }
  auto it = cur.find({0, 0});
  return it == cur.end() ? 0 : it->second;
}

}  // namespace tbg
