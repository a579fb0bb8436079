#pragma once

// Closed alternating walks Theta_l: sequences of l (plus, minus) step pairs
// with zero net displacement. These index the terms of the diagonal entry of
// A_k^l and drive the per-walk trace oracle.

#include <array>
#include <functional>
#include <vector>

#include "tbg/stencil.hpp"

namespace tbg {

struct Walk {
  std::vector<Site> plus_steps;   // (alpha_i, beta_i), frequency shifts
  std::vector<Site> minus_steps;  // (gamma_i, delta_i)
  // prefix sums per i: {alpha~, beta~, gamma~, delta~}
  std::vector<std::array<long, 4>> prefix;
  long m_pi = 0;   // (2/3) sum (gamma_i + beta_i)
  Cyclo coeff;     // product of layer coefficients (3^l w^{m_pi} for canonical)
};

// Depth-first enumeration in lexicographic order of step indices
// (plus index, then minus index, per pair). Prunes branches whose offset
// cannot return to the origin with the remaining steps.
void enumerate_theta(int ell, const Stencil& st, const std::function<void(const Walk&)>& fn);

std::size_t count_theta(int ell, const Stencil& st);

// independent closed-walk count by convolution of per-step displacement
// tables; test oracle for enumerate_theta
std::size_t count_theta_dp(int ell, const Stencil& st);

}  // namespace tbg
