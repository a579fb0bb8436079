#include "tbg/stencil.hpp"

#include <algorithm>
#include <map>

namespace tbg {

Stencil build_stencil(const Potential& p) {
  if (p.empty()) throw std::invalid_argument("stencil of an empty potential");
  p.validate();
  Stencil st;
  for (const auto& [f, c] : p.modes)
    st.plus_layer.push_back({Site{-f.first, -f.second}, c});
  for (const auto& [f, c] : p.modes)
    st.minus_layer.push_back({Site{f.first, f.second}, c});
  for (const auto& [s, cp] : st.plus_layer) {
    for (const auto& [t, cq] : st.minus_layer) {
      StencilTerm term;
      term.net_shift = {(s.first + t.first) / 3, (s.second + t.second) / 3};
      term.inner_offset = {(s.first - 1) / 3, (s.second - 1) / 3};
      term.coeff = cp * cq;
      term.plus_shift = s;
      term.minus_shift = t;
      st.terms.push_back(std::move(term));
    }
  }
  return st;
}

std::vector<StencilTerm> Stencil::merged() const {
  std::map<std::pair<Site, Site>, Cyclo> acc;
  for (const auto& t : terms) acc[{t.net_shift, t.inner_offset}] += t.coeff;
  std::vector<StencilTerm> out;
  for (const auto& [key, c] : acc) {
    if (c.is_zero()) continue;
    StencilTerm t;
    t.net_shift = key.first;
    t.inner_offset = key.second;
    t.coeff = c;
    out.push_back(std::move(t));
  }
  return out;
}

int Stencil::max_reduced_shift() const {
  int m = 0;
  for (const auto& t : terms)
    m = std::max({m, std::abs(t.net_shift.first), std::abs(t.net_shift.second)});
  return m;
}

std::vector<Site> Stencil::inner_offsets() const {
  std::vector<Site> out;
  for (const auto& t : terms)
    if (std::find(out.begin(), out.end(), t.inner_offset) == out.end())
      out.push_back(t.inner_offset);
  return out;
}

Cyclo lambda_value(const Site& site, const Cyclo& k) {
  Cyclo d = k + Rational(3) * gamma_ab(site.first, site.second) + Cyclo::mu();
  if (d.is_zero())
    throw PoleError("resolvent pole at site (" + std::to_string(site.first) + "," +
                    std::to_string(site.second) + ")");
  return d.inv();
}

Cyclo lambda_inner_value(const Site& site, const Cyclo& k) {
  Cyclo d = k + Rational(3) * gamma_ab(site.first, site.second) +
            Rational(2) * Cyclo::mu();
  if (d.is_zero())
    throw PoleError("inner resolvent pole at site (" + std::to_string(site.first) +
                    "," + std::to_string(site.second) + ")");
  return d.inv();
}

std::vector<std::unordered_set<std::int64_t>> reach_sets(const Stencil& st, int jmax) {
  std::vector<std::unordered_set<std::int64_t>> r(jmax + 1);
  r[0].insert(pack_site(0, 0));
  auto shifts = st.merged();
  for (int j = 1; j <= jmax; ++j) {
    r[j].reserve(r[j - 1].size() * 2);
    for (auto key : r[j - 1]) {
      auto [m, n] = unpack_site(key);
      for (const auto& t : shifts)
        r[j].insert(pack_site(m + t.net_shift.first, n + t.net_shift.second));
    }
  }
  return r;
}

}  // namespace tbg
