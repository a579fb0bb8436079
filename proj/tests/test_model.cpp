#include <doctest.h>

#include <complex>
#include <random>
#include <set>

#include "tbg/potential.hpp"
#include "tbg/stencil.hpp"
#include "tbg/walks.hpp"

using namespace tbg;

TEST_CASE("canonical potential: three modes, orbit closed, reality") {
  Potential p = canonical_potential();
  CHECK(p.modes.size() == 3);
  CHECK(p.reality_flag);
  CHECK_NOTHROW(p.validate());
  // the orbit image has order 3 and the accumulated phase w^3 = 1 returns
  // each coefficient to itself
  for (const auto& [f, c] : p.modes) {
    CHECK(orbit_image(orbit_image(orbit_image(f))) == f);
    Cyclo around = Cyclo::omega2() * Cyclo::omega2() * Cyclo::omega2() * c;
    CHECK(around == c);
  }
  // coefficient pattern sqrt3 * {1, w, w^2}
  CHECK(p.modes.at({-1, -1}) == Cyclo::sqrt3());
  CHECK(p.modes.at({2, -1}) == Cyclo::sqrt3() * Cyclo::omega());
  CHECK(p.modes.at({-1, 2}) == Cyclo::sqrt3() * Cyclo::omega2());
}

TEST_CASE("symmetry_complete: orbit of a single seed") {
  std::map<FreqPair, Cyclo> seed;
  seed[Potential::nindex_to_freq(0, 0)] = Cyclo::one();  // frequency (2,2)
  Potential p = symmetry_complete(seed, false);
  CHECK(p.modes.size() == 3);
  CHECK_NOTHROW(p.validate());
  // orbit phases follow c_img = w^2 c
  FreqPair f{2, 2};
  CHECK(p.modes.at(f) == Cyclo::one());
  CHECK(p.modes.at(orbit_image(f)) == Cyclo::omega2());
  CHECK(p.modes.at(orbit_image(orbit_image(f))) == Cyclo::omega());
}

TEST_CASE("symmetry_complete: empty seed and inconsistent seed") {
  CHECK(symmetry_complete({}, true).empty());
  std::map<FreqPair, Cyclo> bad;
  bad[{2, 2}] = Cyclo::one();
  bad[orbit_image({2, 2})] = Cyclo::one();  // should be w^2
  CHECK_THROWS_AS(symmetry_complete(bad, false), SymmetryError);
}

TEST_CASE("symmetry_complete: reality closure") {
  // (2,5) sits on an orbit disjoint from its reality partner (5,2)
  std::map<FreqPair, Cyclo> seed;
  seed[{2, 5}] = Cyclo::omega() + Cyclo(2);
  Potential p = symmetry_complete(seed, true);
  CHECK_NOTHROW(p.validate());
  CHECK(p.modes.size() == 6);  // two reality-coupled orbits of three
  CHECK(p.modes.at({5, 2}) == (Cyclo::omega() + Cyclo(2)).conj());

  // the canonical orbit is reality-self-paired: an arbitrary coefficient on
  // (-1,2) conflicts with its own orbit under the reality relation
  std::map<FreqPair, Cyclo> selfpaired;
  selfpaired[{-1, 2}] = Cyclo::omega() + Cyclo(2);
  CHECK_THROWS_AS(symmetry_complete(selfpaired, true), SymmetryError);
  // while the canonical coefficient sqrt3 * w^2 is compatible
  selfpaired[{-1, 2}] = Cyclo::sqrt3() * Cyclo::omega2();
  CHECK(symmetry_complete(selfpaired, true).modes.size() == 3);
}

TEST_CASE("potential json round trip and validation") {
  Potential p = canonical_potential();
  std::string text = p.to_json();
  Potential q = Potential::from_json(text);
  CHECK(q.modes == p.modes);
  CHECK(q.digest() == p.digest());
  // digest changes when one coefficient changes
  Potential r = p;
  r.modes[{-1, -1}] = Cyclo::sqrt3() + Cyclo::one();
  CHECK(r.digest() != p.digest());
}

TEST_CASE("build_stencil: canonical has 9 composite terms with prefactor 3") {
  Stencil st = build_stencil(canonical_potential());
  CHECK(st.terms.size() == 9);
  std::multiset<std::pair<int, int>> shifts;
  Cyclo third = rat::of(1, 3) * Cyclo::one();
  for (const auto& t : st.terms) {
    shifts.insert(t.net_shift);
    Cyclo unit = third * t.coeff;
    bool is_power_of_omega = (unit == Cyclo::one() || unit == Cyclo::omega() ||
                              unit == Cyclo::omega2());
    CHECK(is_power_of_omega);
  }
  CHECK(shifts.count({0, 0}) == 3);
  for (auto d : {std::pair{1, 0}, {0, 1}, {-1, 0}, {0, -1}, {-1, 1}, {1, -1}})
    CHECK(shifts.count(d) == 1);
  CHECK(st.merged().size() == 9);  // inner offsets keep the 3 diagonal terms apart
}

TEST_CASE("build_stencil: term counts for other potentials") {
  std::map<FreqPair, Cyclo> seed;
  seed[{2, 2}] = Cyclo::one();
  Potential one_orbit = symmetry_complete(seed, false);
  CHECK(build_stencil(one_orbit).terms.size() == 9);

  std::map<FreqPair, Cyclo> seed6;
  seed6[{2, 5}] = Cyclo(1);
  Potential six = symmetry_complete(seed6, true);
  CHECK(six.modes.size() == 6);
  Stencil st = build_stencil(six);
  CHECK(st.terms.size() == 36);
  std::set<std::pair<std::pair<int, int>, std::pair<int, int>>> keys;
  for (const auto& t : st.terms) keys.insert({t.net_shift, t.inner_offset});
  CHECK(st.merged().size() <= keys.size());
  CHECK_THROWS_AS(build_stencil(Potential{}), std::invalid_argument);
}

TEST_CASE("lambda_value: examples") {
  // site (0,0), k = 0: 1/mu
  CHECK(lambda_value({0, 0}, Cyclo::zero()) == Cyclo::mu().inv());
  // pole when k = -3 gamma - mu
  Cyclo kpole = -(Rational(3) * gamma_ab(2, -1) + Cyclo::mu());
  CHECK_THROWS_AS(lambda_value({2, -1}, kpole), PoleError);
  // |denominator|^2 at k=0, site (1,0): |w^2*4 - w*1|^2 = 21
  Cyclo den = Rational(3) * gamma_ab(1, 0) + Cyclo::mu();
  CHECK(den * den.conj() == Cyclo(21));
  CHECK(lambda_value({1, 0}, Cyclo::zero()) == den.inv());
}

TEST_CASE("walks: ell = 1 canonical gives exactly the 3 step-negation pairs") {
  Stencil st = build_stencil(canonical_potential());
  std::vector<Walk> walks;
  enumerate_theta(1, st, [&](const Walk& w) { walks.push_back(w); });
  CHECK(walks.size() == 3);
  for (const auto& w : walks) {
    CHECK(w.minus_steps[0].first == -w.plus_steps[0].first);
    CHECK(w.minus_steps[0].second == -w.plus_steps[0].second);
  }
  // walk [(1,1),(-1,-1)] has m_pi = 0
  for (const auto& w : walks)
    if (w.plus_steps[0] == Site{1, 1}) CHECK(w.m_pi == 0);
}

TEST_CASE("walks: closure, prefix sums and even m_pi") {
  Stencil st = build_stencil(canonical_potential());
  for (int ell = 1; ell <= 4; ++ell) {
    enumerate_theta(ell, st, [&](const Walk& w) {
      CHECK(w.prefix[0][0] == 0);
      CHECK(w.prefix[0][1] == 0);
      long ca = 0, cb = 0;
      for (int i = 0; i < ell; ++i) {
        CHECK(w.prefix[i][0] == ca);
        CHECK(w.prefix[i][1] == cb);
        CHECK(w.prefix[i][2] == ca + w.plus_steps[i].first);
        CHECK(w.prefix[i][3] == cb + w.plus_steps[i].second);
        ca += w.plus_steps[i].first + w.minus_steps[i].first;
        cb += w.plus_steps[i].second + w.minus_steps[i].second;
      }
      CHECK(ca == 0);
      CHECK(cb == 0);
      CHECK(w.m_pi % 2 == 0);
    });
  }
}

TEST_CASE("walks: enumeration count equals brute force at ell = 2") {
  Stencil st = build_stencil(canonical_potential());
  // brute force over all 81 step sequences
  std::size_t brute = 0;
  const auto& P = st.plus_layer;
  const auto& Q = st.minus_layer;
  for (const auto& [s1, c1] : P)
    for (const auto& [t1, d1] : Q)
      for (const auto& [s2, c2] : P)
        for (const auto& [t2, d2] : Q) {
          long a = s1.first + t1.first + s2.first + t2.first;
          long b = s1.second + t1.second + s2.second + t2.second;
          if (a == 0 && b == 0) ++brute;
        }
  CHECK(count_theta(2, st) == brute);
}

TEST_CASE("walks: DP count oracle for ell <= 5") {
  Stencil st = build_stencil(canonical_potential());
  for (int ell = 1; ell <= 5; ++ell)
    CHECK(count_theta(ell, st) == count_theta_dp(ell, st));
  std::map<FreqPair, Cyclo> seed6;
  seed6[{2, 5}] = Cyclo(1);
  Stencil st6 = build_stencil(symmetry_complete(seed6, true));
  for (int ell = 1; ell <= 3; ++ell)
    CHECK(count_theta(ell, st6) == count_theta_dp(ell, st6));
}

TEST_CASE("walks: lexicographic emission order") {
  Stencil st = build_stencil(canonical_potential());
  std::vector<std::vector<int>> orders;
  enumerate_theta(2, st, [&](const Walk& w) {
    std::vector<int> idx;
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 3; ++j) {
        if (st.plus_layer[j].first == w.plus_steps[i]) idx.push_back(j);
      }
      for (int j = 0; j < 3; ++j) {
        if (st.minus_layer[j].first == w.minus_steps[i]) idx.push_back(j);
      }
    }
    orders.push_back(idx);
  });
  CHECK(std::is_sorted(orders.begin(), orders.end()));
}

TEST_CASE("reach sets grow and stay symmetric") {
  Stencil st = build_stencil(canonical_potential());
  auto r = reach_sets(st, 4);
  CHECK(r[0].size() == 1);
  for (int j = 1; j <= 4; ++j) {
    CHECK(r[j].size() > r[j - 1].size());
    for (auto key : r[j - 1]) CHECK(r[j].count(key));
    for (auto key : r[j]) {
      auto [m, n] = unpack_site(key);
      CHECK(r[j].count(pack_site(-m, -n)));
    }
  }
  CHECK(r[1].size() == 7);  // hex neighbours + origin
}
