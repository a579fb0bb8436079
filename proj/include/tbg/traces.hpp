#pragma once

// Exact traces sigma_l = tr(A_k^l) for l >= 2, through the residue formula:
// the diagonal entry F_l(k) = <A_k^l e_0, e_0> is a rational function whose
// poles sit at -3 gamma_(a,b) - mu (plus family, from the outer resolvent)
// and -3 gamma_(a,b) - 2 mu (minus family, inner resolvent), and
//
//     sigma_l = -(2 i omega pi / 9) * sum_poles eps * Res(F_l, pole),
//
// with eps the second coordinate of the pole's unreduced prefix-sum label
// (3b for a plus site (a,b), 3b+1 for a minus site). Residues are computed
// by pushing truncated Laurent series through l applications of the stencil.
// The per-walk oracle evaluates the same sum literally, walk by walk.

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tbg/laurent.hpp"
#include "tbg/pipoly.hpp"
#include "tbg/potential.hpp"
#include "tbg/stencil.hpp"

namespace tbg {

struct PoleSite {
  int family;  // 1: plus (outer), 2: minus (inner)
  long a, b;   // reduced site label

  Cyclo location() const;  // -3 gamma_(a,b) - family * mu
  long eps() const { return family == 1 ? 3 * b : 3 * b + 1; }

  auto operator<=>(const PoleSite&) const = default;
};

std::vector<PoleSite> candidate_poles(const Stencil& st, int ell);

// residue of F_l at one pole via Laurent propagation
Cyclo residue_at_pole(const Stencil& st, int ell, const PoleSite& pole);

// all candidate poles with their residues, poles in sorted order
std::vector<std::pair<PoleSite, Cyclo>> pole_residues(const Stencil& st, int ell,
                                                      int jobs = 1);

// tau_l / Pi as a field element; rational exactly when the traces are real
Cyclo trace_exact_coeff(const Potential& p, int ell, int jobs = 1);

// (pi/sqrt3) * q_l as a degree-1 PiPoly; throws std::logic_error if the
// rationality assertion fails (that would be an implementation bug)
PiPoly trace_exact(const Potential& p, int ell, int jobs = 1);

// literal per-walk residues; cost guard 2 <= ell <= 4
PiPoly trace_oracle_walks(const Potential& p, int ell);
Cyclo trace_oracle_walks_coeff(const Potential& p, int ell);

// trace over the two-component space: 2 * trace_exact(p, two_ell/2)
PiPoly trace_T_even(const Potential& p, int two_ell, int jobs = 1);

// trace of the M-truncated matrix power at Floquet parameter k
std::complex<double> trace_numeric(const Potential& p, int ell,
                                   std::complex<double> k, int M);

// partial symmetric sums of the diagonal over square windows |m|_inf <= n,
// n = 0..n_max, at k = 0; numeric only (sigma_1 is not absolutely summable
// as an operator trace)
std::vector<std::complex<double>> sigma1_regularized(const Potential& p, int n_max);

struct TraceTable {
  std::uint64_t potential_digest = 0;
  std::map<int, PiPoly> entries;             // ell -> q_ell * Pi
  std::map<int, std::string> provenance;     // "engine" | "oracle" | "cache"

  bool has_range(int lo, int hi) const;
  std::vector<int> missing(int lo, int hi) const;
};

// compute (or extend) a table of exact traces for ell = 2..ell_max
TraceTable compute_traces(const Potential& p, int ell_max, int jobs = 1,
                          TraceTable seed = {});

}  // namespace tbg
