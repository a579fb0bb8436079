#include "tbg/potential.hpp"

#include <deque>

#include <nlohmann/json.hpp>

namespace tbg {

namespace {

bool mode_congruent(const FreqPair& f) {
  auto m3 = [](long x) { return ((x % 3) + 3) % 3; };
  return m3(f.first) == 2 && m3(f.second) == 2;
}

}  // namespace

FreqPair orbit_image(const FreqPair& f) { return {f.second, -f.first - f.second}; }

void Potential::validate() const {
  for (const auto& [f, c] : modes) {
    if (!mode_congruent(f))
      throw SymmetryError("mode frequency not congruent to (2,2) mod 3");
    FreqPair img = orbit_image(f);
    auto it = modes.find(img);
    Cyclo want = Cyclo::omega2() * c;
    if (want.is_zero()) continue;
    if (it == modes.end() || it->second != want)
      throw SymmetryError("rotation orbit closure violated at mode (" +
                          std::to_string(f.first) + "," + std::to_string(f.second) + ")");
    if (reality_flag) {
      FreqPair sw{f.second, f.first};
      auto jt = modes.find(sw);
      if (jt == modes.end() || jt->second != c.conj())
        throw SymmetryError("reality relation violated at mode (" +
                            std::to_string(f.first) + "," + std::to_string(f.second) + ")");
    }
  }
}

std::uint64_t Potential::digest() const {
  // FNV-1a over the canonical serialization; used as a cache key only
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ull;
    }
  };
  for (const auto& [f, c] : modes) {
    mix(std::to_string(f.first) + "," + std::to_string(f.second) + ":");
    for (const auto& part : c.serialize()) mix(part + ";");
  }
  mix(reality_flag ? "real" : "complex");
  return h;
}

std::string Potential::to_json() const {
  nlohmann::json j;
  j["modes"] = nlohmann::json::array();
  for (const auto& [f, c] : modes) {
    auto [n1, n2] = freq_to_nindex(f);
    nlohmann::json m;
    m["n"] = {n1, n2};
    auto s = c.serialize();
    m["c"] = {s[0], s[1], s[2], s[3]};
    j["modes"].push_back(m);
  }
  j["complete_symmetry"] = true;
  j["real"] = reality_flag;
  return j.dump(2);
}

Potential Potential::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  std::map<FreqPair, Cyclo> seed;
  for (const auto& m : j.at("modes")) {
    long n1 = m.at("n").at(0).get<long>();
    long n2 = m.at("n").at(1).get<long>();
    std::array<std::string, 4> s;
    for (int k = 0; k < 4; ++k) s[k] = m.at("c").at(k).get<std::string>();
    FreqPair f = nindex_to_freq(n1, n2);
    Cyclo c = Cyclo::deserialize(s);
    auto [it, fresh] = seed.emplace(f, c);
    if (!fresh && it->second != c)
      throw SymmetryError("duplicate mode with conflicting coefficients");
  }
  bool real = j.value("real", false);
  bool complete = j.value("complete_symmetry", false);
  if (complete) return symmetry_complete(seed, real);
  Potential p{std::move(seed), real};
  p.validate();
  return p;
}

Potential canonical_potential() {
  Cyclo s3 = Cyclo::sqrt3();
  Potential p;
  p.reality_flag = true;
  p.modes[{-1, -1}] = s3;
  p.modes[{2, -1}] = s3 * Cyclo::omega();
  p.modes[{-1, 2}] = s3 * Cyclo::omega2();
  p.validate();
  return p;
}

Potential symmetry_complete(const std::map<FreqPair, Cyclo>& seed, bool want_real) {
  std::map<FreqPair, Cyclo> out;
  std::deque<FreqPair> queue;
  auto put = [&](const FreqPair& f, const Cyclo& v) {
    if (!mode_congruent(f))
      throw SymmetryError("seed mode frequency not congruent to (2,2) mod 3");
    auto it = out.find(f);
    if (it == out.end()) {
      if (!v.is_zero()) {
        out[f] = v;
        queue.push_back(f);
      }
    } else if (it->second != v) {
      throw SymmetryError("symmetry relations force conflicting values at mode (" +
                          std::to_string(f.first) + "," + std::to_string(f.second) + ")");
    }
  };
  for (const auto& [f, v] : seed) put(f, v);
  while (!queue.empty()) {
    FreqPair f = queue.front();
    queue.pop_front();
    Cyclo v = out.at(f);
    put(orbit_image(f), Cyclo::omega2() * v);
    if (want_real) put({f.second, f.first}, v.conj());
  }
  Potential p{std::move(out), want_real};
  p.validate();
  return p;
}

}  // namespace tbg
