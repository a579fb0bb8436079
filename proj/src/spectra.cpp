#include "tbg/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseLU>

namespace tbg {

namespace {

using Cplx = std::complex<double>;
using SpMat = Eigen::SparseMatrix<Cplx>;
using Vec = Eigen::VectorXcd;

Cplx gamma_c(double a, double b) {
  static const Cplx w = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
  return w * w * a - w * b;
}

Cplx mu_c() { return gamma_c(1, 1); }

}  // namespace

int TruncatedOp::site_index(int m, int n) const {
  return (m + M) * (2 * M + 1) + (n + M);
}

TruncatedOp materialize(const Stencil& st, Cplx k, int M) {
  TruncatedOp op;
  op.M = M;
  op.k = k;
  op.dim = (2 * M + 1) * (2 * M + 1);
  auto merged = st.merged();
  // pole proximity guard (both resolvent families over the window)
  for (int m = -M - 1; m <= M + 1; ++m)
    for (int n = -M - 1; n <= M + 1; ++n)
      for (int fam = 1; fam <= 2; ++fam)
        if (std::abs(k + 3.0 * gamma_c(m, n) + double(fam) * mu_c()) < 1e-6)
          throw PoleError("materialize: k within 1e-6 of a window pole");

  for (int m = -M; m <= M; ++m) {
    for (int n = -M; n <= M; ++n) {
      Cplx outer = 1.0 / (k + 3.0 * gamma_c(m, n) + mu_c());
      for (const auto& t : merged) {
        int sm = m + t.net_shift.first, sn = n + t.net_shift.second;
        if (std::abs(sm) > M || std::abs(sn) > M) continue;
        Cplx inner = 1.0 / (k +
                            3.0 * gamma_c(m + t.inner_offset.first,
                                          n + t.inner_offset.second) +
                            2.0 * mu_c());
        op.entries.push_back({op.site_index(m, n), op.site_index(sm, sn),
                              t.coeff.to_complex() * outer * inner});
      }
    }
  }
  return op;
}

std::vector<Cplx> polynomial_roots(const std::vector<Cplx>& coeffs, int max_iter,
                                   double tol) {
  // strip leading zeros
  int deg = static_cast<int>(coeffs.size()) - 1;
  while (deg > 0 && std::abs(coeffs[deg]) == 0.0) --deg;
  if (deg < 1) return {};
  std::vector<Cplx> c(coeffs.begin(), coeffs.begin() + deg + 1);

  auto eval = [&](Cplx x) {
    Cplx acc = 0.0;
    for (int i = deg; i >= 0; --i) acc = acc * x + c[i];
    return acc;
  };
  // Cauchy-style radius from the coefficient profile
  double r = 0.0;
  for (int i = 0; i < deg; ++i)
    r = std::max(r, std::pow(std::abs(c[i] / c[deg]), 1.0 / (deg - i)));
  r = 1.2 * std::max(r, 1e-8);

  std::vector<Cplx> z(deg);
  for (int i = 0; i < deg; ++i)
    z[i] = std::polar(r, 2.0 * std::numbers::pi * i / deg + 0.4);

  for (int it = 0; it < max_iter; ++it) {
    double worst = 0.0;
    for (int i = 0; i < deg; ++i) {
      Cplx denom = c[deg];
      for (int j2 = 0; j2 < deg; ++j2)
        if (j2 != i) denom *= z[i] - z[j2];
      if (denom == 0.0) denom = 1e-300;
      Cplx dz = eval(z[i]) / denom;
      z[i] -= dz;
      worst = std::max(worst, std::abs(dz));
    }
    double scale = 0.0;
    for (auto& zi : z) scale = std::max(scale, std::abs(zi));
    if (worst <= tol * std::max(scale, 1.0)) return z;
  }
  throw std::runtime_error(
      "polynomial_roots: Durand-Kerner did not converge; raise trace_order");
}

namespace {

// beta roots -> principal-branch alphas, tail-filtered and clustered.
// The Lemma tail with hs = 11/2 bounds the truncation error of the degree-n
// Taylor polynomial; roots where that bound is not small are discarded.
MagicSet collect_magic(const std::vector<Cplx>& beta_roots, int count,
                       int trace_order, int truncation) {
  const double hs = 5.5;
  const double sqrt_e = std::exp(0.5);
  const int N = trace_order + 1;
  std::vector<Cplx> alphas;
  for (Cplx beta : beta_roots) {
    double nu = sqrt_e * hs * std::abs(beta);
    double q = nu / std::sqrt(double(N));
    if (q >= 0.95) continue;  // truncation-dominated region
    if (std::pow(q, N) / (1.0 - q) > 1e-3) continue;
    Cplx a = std::sqrt(beta);  // principal branch
    if (a.real() < 0 || (a.real() == 0 && a.imag() < 0)) a = -a;
    alphas.push_back(a);
  }
  std::sort(alphas.begin(), alphas.end(), [](Cplx x, Cplx y) {
    if (std::abs(x) != std::abs(y)) return std::abs(x) < std::abs(y);
    return x.imag() < y.imag();
  });

  MagicSet out;
  out.trace_order = trace_order;
  out.truncation = truncation;
  for (size_t i = 0; i < alphas.size() && out.alphas.size() < size_t(count);) {
    size_t j = i + 1;
    while (j < alphas.size() && std::abs(alphas[j] - alphas[i]) < 1e-4) ++j;
    out.alphas.push_back(alphas[i]);
    out.multiplicities.push_back(static_cast<int>(j - i));
    i = j;
  }
  return out;
}

}  // namespace

MagicSet magic_angles(const TraceTable& table, int count, int trace_order) {
  if (trace_order < 2 * count)
    throw std::invalid_argument("magic_angles: trace_order should be >= 2*count");
  DetPoly det = det2_taylor(table, trace_order);
  return collect_magic(polynomial_roots(det.beta_coefficients()), count, trace_order,
                       0);
}

MagicSet magic_angles_numeric(const std::vector<Cplx>& sigma_from_2, int count,
                              int trace_order) {
  if (trace_order < 2 * count)
    throw std::invalid_argument("magic_angles: trace_order should be >= 2*count");
  if (static_cast<int>(sigma_from_2.size()) < trace_order - 1)
    throw std::invalid_argument("magic_angles: need sigma_2..sigma_n numerically");
  // P(beta) = sum_n g_n beta^n with n g_n = -sum_j sigma_j g_{n-j}
  std::vector<Cplx> g(trace_order + 1);
  g[0] = 1.0;
  for (int n = 1; n <= trace_order; ++n) {
    Cplx acc = 0.0;
    for (int j = 2; j <= n; ++j) acc -= sigma_from_2[j - 2] * g[n - j];
    g[n] = acc / double(n);
  }
  return collect_magic(polynomial_roots(g), count, trace_order, 0);
}

namespace {

// truncated chiral block [[D_k on (2,2), a V+],[a V-, D_k on (1,1)]]
SpMat chiral_block(const Potential& p, double alpha, double k1, double k2, int M) {
  Stencil st = build_stencil(p);
  const int W = 2 * M + 1, N = W * W;
  auto idx = [&](int m, int n) { return (m + M) * W + (n + M); };
  std::vector<Eigen::Triplet<Cplx>> trips;
  const Cplx w = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
  auto dk = [&](double f1, double f2) { return w * w * (f1 + k1) - w * (f2 + k2); };
  // diagonal blocks
  for (int m = -M; m <= M; ++m)
    for (int n = -M; n <= M; ++n) {
      trips.emplace_back(idx(m, n), idx(m, n), dk(3 * m + 2, 3 * n + 2));
      trips.emplace_back(N + idx(m, n), N + idx(m, n), dk(3 * m + 1, 3 * n + 1));
    }
  // off-diagonal multiplication blocks
  for (int m = -M; m <= M; ++m)
    for (int n = -M; n <= M; ++n) {
      for (const auto& [s, c] : st.plus_layer) {
        // (1,1) source -> (2,2) target shifted by s
        int tm = m + (s.first - 1) / 3, tn = n + (s.second - 1) / 3;
        if (std::abs(tm) > M || std::abs(tn) > M) continue;
        trips.emplace_back(idx(tm, tn), N + idx(m, n), alpha * c.to_complex());
      }
      for (const auto& [t, c] : st.minus_layer) {
        // (2,2) source -> (1,1) target shifted by t
        int tm = m + (t.first + 1) / 3, tn = n + (t.second + 1) / 3;
        if (std::abs(tm) > M || std::abs(tn) > M) continue;
        trips.emplace_back(N + idx(tm, tn), idx(m, n), alpha * c.to_complex());
      }
    }
  SpMat B(2 * N, 2 * N);
  B.setFromTriplets(trips.begin(), trips.end());
  return B;
}

// lowest `count` singular values via subspace inverse iteration on B^H B;
// returns ascending values. Reports 0 for an exactly singular factorization.
std::vector<double> lowest_singular_values(const SpMat& B, int count, int max_iter,
                                           bool* converged) {
  Eigen::SparseLU<SpMat> lu, luH;
  SpMat BH = SpMat(B.adjoint());
  lu.compute(B);
  if (lu.info() != Eigen::Success) {
    if (converged) *converged = true;
    return std::vector<double>(count, 0.0);
  }
  luH.compute(BH);
  if (luH.info() != Eigen::Success) {
    if (converged) *converged = true;
    return std::vector<double>(count, 0.0);
  }
  const int n = B.rows();
  const int kdim = std::min(n, count + 2);
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::MatrixXcd X(n, kdim);
  for (int j = 0; j < kdim; ++j)
    for (int i = 0; i < n; ++i) X(i, j) = Cplx(u(rng), u(rng));

  std::vector<double> prev(count, -1.0);
  for (int it = 0; it < max_iter; ++it) {
    // X <- (B^H B)^{-1} X, orthonormalize
    for (int j = 0; j < kdim; ++j) {
      Vec y = lu.solve(X.col(j));
      X.col(j) = luH.solve(y);
    }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(X);
    X = qr.householderQ() * Eigen::MatrixXcd::Identity(n, kdim);
    // Rayleigh-Ritz on B^H B
    Eigen::MatrixXcd BX(n, kdim);
    for (int j = 0; j < kdim; ++j) {
      // sparse times dense column
      BX.col(j) = B * X.col(j);
    }
    Eigen::MatrixXcd G = BX.adjoint() * BX;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G);
    std::vector<double> vals(count);
    for (int j = 0; j < count; ++j)
      vals[j] = std::sqrt(std::max(0.0, es.eigenvalues()(j)));
    double drift = 0.0;
    for (int j = 0; j < count; ++j)
      drift = std::max(drift, std::abs(vals[j] - prev[j]) /
                                  std::max(1e-300, std::abs(vals[j]) + 1e-16));
    if (it > 0 && drift < 1e-9) {
      if (converged) *converged = true;
      return vals;
    }
    prev = vals;
    // rotate the subspace toward the Ritz directions
    X = X * es.eigenvectors();
  }
  if (converged) *converged = false;
  return prev;
}

}  // namespace

double smallest_singular(const Potential& p, double alpha, double k1, double k2,
                         int M) {
  SpMat B = chiral_block(p, alpha, k1, k2, M);
  bool ok = false;
  auto v = lowest_singular_values(B, 1, 300, &ok);
  if (!ok) throw std::runtime_error("smallest_singular: inverse iteration failed");
  return v[0];
}

FlatBandReport flat_band_check(const Potential& p, double alpha, int grid, int M) {
  if (grid < 2 || M < 8)
    throw std::invalid_argument("flat_band_check requires grid >= 2 and M >= 8");
  FlatBandReport rep;
  for (int i = 0; i < grid; ++i) {
    for (int j = 0; j < grid; ++j) {
      double k1 = -1.5 + 3.0 * (i + 0.37) / grid;  // offset avoids exact Dirac points
      double k2 = -1.5 + 3.0 * (j + 0.61) / grid;
      double s = smallest_singular(p, alpha, k1, k2, M);
      rep.per_k.push_back({k1, k2, s});
      rep.max_min_singular = std::max(rep.max_min_singular, s);
    }
  }
  return rep;
}

std::vector<BandPoint> band_profile(const Potential& p, double alpha, int grid,
                                    int num_bands, int M) {
  if (grid < 2 || M < 8)
    throw std::invalid_argument("band_profile requires grid >= 2 and M >= 8");
  std::vector<BandPoint> out;
  for (int i = 0; i < grid; ++i) {
    for (int j = 0; j < grid; ++j) {
      double k1 = -1.5 + 3.0 * (i + 0.37) / grid;
      double k2 = -1.5 + 3.0 * (j + 0.61) / grid;
      SpMat B = chiral_block(p, alpha, k1, k2, M);
      bool ok = false;
      auto v = lowest_singular_values(B, num_bands, 300, &ok);
      if (!ok) throw std::runtime_error("band_profile: inverse iteration failed");
      out.push_back({k1, k2, std::move(v)});
    }
  }
  return out;
}

}  // namespace tbg
