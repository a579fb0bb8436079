#pragma once

// Fourier-space form of the operator A_k = D^-1 V+ D^-1 V- restricted to the
// (3Z+1)^2 sublattice. Sites are labeled by reduced coordinates (m,n), i.e.
// frequency (3m+1, 3n+1). Pushing the shifts through the diagonals with
// J^{p,q} Lambda = Lambda_{p,q} J^{p,q} turns the operator into composite
// terms: each term reads the source site x + d, multiplies by the inner
// resolvent at minus-family site x + off and the outer resolvent at x.

#include <cstdint>
#include <unordered_set>
#include <vector>

#include "tbg/potential.hpp"

namespace tbg {

struct PoleError : std::domain_error {
  using std::domain_error::domain_error;
};

using Site = std::pair<int, int>;

inline std::int64_t pack_site(int m, int n) {
  return (static_cast<std::int64_t>(m) << 32) |
         static_cast<std::uint32_t>(static_cast<std::int32_t>(n));
}
inline Site unpack_site(std::int64_t k) {
  return {static_cast<int>(k >> 32), static_cast<int>(static_cast<std::int32_t>(k & 0xffffffff))};
}

struct StencilTerm {
  Site net_shift;      // reduced source offset d = (s+t)/3
  Site inner_offset;   // minus-family site offset from the target
  Cyclo coeff;         // product of the two layer coefficients
  Site plus_shift;     // frequency shift of the V+ layer
  Site minus_shift;    // frequency shift of the V- layer
};

struct Stencil {
  std::vector<std::pair<Site, Cyclo>> plus_layer;   // J-shifts of V+ with coefficients
  std::vector<std::pair<Site, Cyclo>> minus_layer;  // J-shifts of V-
  std::vector<StencilTerm> terms;                   // expanded composite, unmerged

  // composite terms combined over equal (net_shift, inner_offset)
  std::vector<StencilTerm> merged() const;

  int max_reduced_shift() const;  // sup norm over net shifts
  std::vector<Site> inner_offsets() const;
};

Stencil build_stencil(const Potential& p);

// exact outer resolvent entry 1/(k + 3 gamma_(m,n) + mu) on the (3Z+1)^2 site
Cyclo lambda_value(const Site& site, const Cyclo& k);
// inner resolvent 1/(k + 3 gamma_(a,b) + 2 mu) on the (3Z+2)^2 site
Cyclo lambda_inner_value(const Site& site, const Cyclo& k);

// sites reachable from the origin in at most 0..jmax applications of the
// stencil's net shifts (net shift sets always contain 0 and are symmetric)
std::vector<std::unordered_set<std::int64_t>> reach_sets(const Stencil& st, int jmax);

}  // namespace tbg
