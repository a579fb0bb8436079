#pragma once

// Potentials as finite sets of Fourier modes. Internally a mode is keyed by
// its frequency pair (A,B) in rectangular coordinates, with A = B = 2 mod 3
// forced by the translational symmetry. The rotation symmetry u(wz) = w u(z)
// ties coefficients along orbits of (A,B) -> (B,-A-B):
//     c_{(A,B)} = omega * c_{(B,-A-B)},
// and the reality symmetry ties conj(c_{(A,B)}) = c_{(B,A)}.
// External files use the paper-style index n = (n1,n2) with
// (A,B) = (2+3*n1, 2-3*n2).

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <cstdint>

#include "tbg/cyclo.hpp"

namespace tbg {

using FreqPair = std::pair<long, long>;

struct SymmetryError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Potential {
  std::map<FreqPair, Cyclo> modes;  // frequency (A,B) -> coefficient
  bool reality_flag = false;

  bool empty() const { return modes.empty(); }

  // orbit closure (and reality when flagged); throws SymmetryError on failure
  void validate() const;

  std::uint64_t digest() const;

  std::string to_json() const;
  static Potential from_json(const std::string& text);

  static FreqPair nindex_to_freq(long n1, long n2) { return {2 + 3 * n1, 2 - 3 * n2}; }
  static std::pair<long, long> freq_to_nindex(const FreqPair& f) {
    return {(f.first - 2) / 3, (2 - f.second) / 3};
  }
};

// rotation-orbit image index: (A,B) -> (B, -A-B), with c_img = omega^2 * c
FreqPair orbit_image(const FreqPair& f);

// the 3-mode potential of eq. (1.2): coefficients sqrt3 * {1, w, w^2} on the
// frequency triple {(-1,-1), (2,-1), (-1,2)}
Potential canonical_potential();

// close a seed map under the orbit relations (and reality when want_real);
// throws SymmetryError when the relations force conflicting values
Potential symmetry_complete(const std::map<FreqPair, Cyclo>& seed, bool want_real);

}  // namespace tbg
