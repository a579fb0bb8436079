#pragma once

// Floating-point spectral exploration: truncated operator materialization,
// the complex magic-angle set from the det2 Taylor polynomial, and flat-band
// verification through smallest singular values of the truncated chiral block.

#include <array>
#include <complex>
#include <vector>

#include "tbg/fredholm.hpp"

namespace tbg {

struct TruncatedOp {
  int M = 0;
  std::complex<double> k;
  int dim = 0;
  struct Entry {
    int row, col;
    std::complex<double> value;
  };
  std::vector<Entry> entries;  // deterministic order: row-major, merged shifts

  int site_index(int m, int n) const;  // (2M+1)^2 row-major
};

TruncatedOp materialize(const Stencil& st, std::complex<double> k, int M);

struct MagicSet {
  std::vector<std::complex<double>> alphas;  // principal square roots, |alpha| ascending
  std::vector<int> multiplicities;           // cluster sizes at 1e-4 resolution
  int trace_order = 0;
  int truncation = 0;  // 0 for exact-trace input
};

// roots of a complex-coefficient polynomial (ascending powers) by
// Durand-Kerner simultaneous iteration with deterministic initialization;
// throws std::runtime_error when the iteration cap is hit
std::vector<std::complex<double>> polynomial_roots(
    const std::vector<std::complex<double>>& coeffs, int max_iter = 400,
    double tol = 1e-13);

MagicSet magic_angles(const TraceTable& table, int count, int trace_order);
// sigma[j] = numeric sigma_{j+2} (values of tr A^j, not divided by pi/sqrt3)
MagicSet magic_angles_numeric(const std::vector<std::complex<double>>& sigma_from_2,
                              int count, int trace_order);

// smallest singular value of the truncated block [[D_k, a V+],[a V-, D_k]]
// at Floquet parameters (k1, k2); M is the reduced window radius
double smallest_singular(const Potential& p, double alpha, double k1, double k2,
                         int M);

struct FlatBandReport {
  double max_min_singular = 0.0;
  std::vector<std::array<double, 3>> per_k;  // k1, k2, s_min
};

FlatBandReport flat_band_check(const Potential& p, double alpha, int grid, int M);

struct BandPoint {
  double k1, k2;
  std::vector<double> s;  // lowest singular values, ascending
};

std::vector<BandPoint> band_profile(const Potential& p, double alpha, int grid,
                                    int num_bands, int M);

}  // namespace tbg
