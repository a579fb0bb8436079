#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>

#include "tbg/spectra.hpp"

using namespace tbg;

namespace {

const TraceTable& canonical_table(int n) {
  static TraceTable cache;
  if (!cache.has_range(2, n))
    cache = compute_traces(canonical_potential(), n, 2, std::move(cache));
  return cache;
}

}  // namespace

TEST_CASE("materialize: origin row has the 9 stencil contributions on 7 shifts") {
  Stencil st = build_stencil(canonical_potential());
  TruncatedOp op = materialize(st, {0.1, 0.0}, 2);
  int origin = op.site_index(0, 0);
  std::map<int, std::complex<double>> row;
  int contributions = 0;
  for (const auto& e : op.entries)
    if (e.row == origin) {
      row[e.col] += e.value;
      ++contributions;
    }
  CHECK(contributions == 9);
  CHECK(row.size() == 7);
  for (const auto& [col, v] : row) CHECK(std::abs(v) > 0);
}

TEST_CASE("materialize: M = 0 keeps only the shift-free terms") {
  Stencil st = build_stencil(canonical_potential());
  TruncatedOp op = materialize(st, {0.1, 0.0}, 0);
  CHECK(op.dim == 1);
  CHECK(op.entries.size() == 3);  // three zero-shift composite terms
}

TEST_CASE("materialize: origin entry equals the hand formula") {
  Stencil st = build_stencil(canonical_potential());
  std::complex<double> k(0.17, -0.09);
  TruncatedOp op = materialize(st, k, 1);
  std::complex<double> got = 0.0;
  int origin = op.site_index(0, 0);
  for (const auto& e : op.entries)
    if (e.row == origin && e.col == origin) got += e.value;
  // 3 * Lambda(0) * (Lin(0,0) + w^2 Lin(-1,0) + w Lin(0,-1))
  std::complex<double> w = std::polar(1.0, 2.0 * std::acos(-1.0) / 3.0);
  auto gam = [&](double a, double b) { return w * w * a - w * b; };
  std::complex<double> mu = gam(1, 1);
  std::complex<double> want =
      3.0 / (k + mu) *
      (1.0 / (k + 2.0 * mu) + w * w / (k + 3.0 * gam(-1, 0) + 2.0 * mu) +
       w / (k + 3.0 * gam(0, -1) + 2.0 * mu));
  CHECK(std::abs(got - want) < 1e-12);
}

TEST_CASE("materialize agrees with explicit diagonal/shift assembly") {
  // direct assembly of D^-1 V+ D^-1 V- from dense shift and diagonal matrices
  Stencil st = build_stencil(canonical_potential());
  std::complex<double> k(0.31, 0.07);
  const int M = 3, W = 2 * M + 1, N = W * W;
  auto idx = [&](int m, int n) { return (m + M) * W + (n + M); };
  std::complex<double> w = std::polar(1.0, 2.0 * std::acos(-1.0) / 3.0);
  auto gam = [&](double a, double b) { return w * w * a - w * b; };
  std::complex<double> mu = gam(1, 1);

  std::vector<std::complex<double>> Vp(N * N, 0.0), Vm(N * N, 0.0);
  for (int m = -M; m <= M; ++m)
    for (int n = -M; n <= M; ++n) {
      for (const auto& [s, c] : st.plus_layer) {
        // J^s on the (1,1) reduced grid: source (m,n) frequency + s lands on
        // the (2,2) grid at (m,n)+off
        int om = (s.first - 1) / 3, on = (s.second - 1) / 3;
        int tm = m + om, tn = n + on;
        if (std::abs(tm) <= M && std::abs(tn) <= M)
          Vp[idx(tm, tn) * N + idx(m, n)] += c.to_complex();
      }
      for (const auto& [t, c] : st.minus_layer) {
        int om = (t.first + 1) / 3, on = (t.second + 1) / 3;
        int tm = m + om, tn = n + on;
        if (std::abs(tm) <= M && std::abs(tn) <= M)
          Vm[idx(tm, tn) * N + idx(m, n)] += c.to_complex();
      }
    }
  // A = D1^-1 Vp D2^-1 Vm with D1 on the (1,1) grid, D2 on the (2,2) grid
  std::vector<std::complex<double>> A(N * N, 0.0);
  for (int r = 0; r < N; ++r) {
    int rm = r / W - M, rn = r % W - M;
    std::complex<double> d1 = 1.0 / (k + 3.0 * gam(rm, rn) + mu);
    for (int c = 0; c < N; ++c) {
      std::complex<double> acc = 0.0;
      for (int mid = 0; mid < N; ++mid) {
        if (Vp[r * N + mid] == 0.0) continue;
        int mm = mid / W - M, mn = mid % W - M;
        std::complex<double> d2 = 1.0 / (k + 3.0 * gam(mm, mn) + 2.0 * mu);
        acc += Vp[r * N + mid] * d2 * Vm[mid * N + c];
      }
      A[r * N + c] = d1 * acc;
    }
  }
  TruncatedOp op = materialize(st, k, M);
  std::vector<std::complex<double>> B(N * N, 0.0);
  for (const auto& e : op.entries) B[e.row * N + e.col] += e.value;
  // interior rows agree entrywise (materialize keeps inner sites unclipped,
  // direct assembly clips them at the window edge, so compare the interior)
  for (int rm = -M + 1; rm <= M - 1; ++rm)
    for (int rn = -M + 1; rn <= M - 1; ++rn)
      for (int cm = -M + 1; cm <= M - 1; ++cm)
        for (int cn = -M + 1; cn <= M - 1; ++cn) {
          auto a = A[idx(rm, rn) * N + idx(cm, cn)];
          auto b = B[idx(rm, rn) * N + idx(cm, cn)];
          CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)));
        }
}

TEST_CASE("materialize rejects k near a pole") {
  Stencil st = build_stencil(canonical_potential());
  Cyclo pole = -(Rational(3) * gamma_ab(1, 0) + Cyclo::mu());
  CHECK_THROWS_AS(materialize(st, pole.to_complex(), 2), PoleError);
}

TEST_CASE("polynomial_roots solves a known factorization") {
  // (z-1)(z-2i)(z+3) = z^3 + (2 - 2i) z^2 + (-3 - 4i) z ... build from roots
  std::vector<std::complex<double>> roots = {{1, 0}, {0, 2}, {-3, 0}};
  std::vector<std::complex<double>> c = {1.0};
  for (auto r : roots) {
    std::vector<std::complex<double>> nc(c.size() + 1, 0.0);
    for (size_t i = 0; i < c.size(); ++i) {
      nc[i + 1] += c[i];
      nc[i] -= r * c[i];
    }
    c = nc;
  }
  auto got = polynomial_roots(c);
  REQUIRE(got.size() == 3);
  for (auto want : roots) {
    double best = 1e9;
    for (auto g : got) best = std::min(best, std::abs(g - want));
    CHECK(best < 1e-9);
  }
}

TEST_CASE("magic_angles: first real magic angle near 0.5857") {
  MagicSet set = magic_angles(canonical_table(16), 1, 16);
  REQUIRE(!set.alphas.empty());
  CHECK(std::abs(set.alphas[0].imag()) < 1e-8);
  CHECK(set.alphas[0].real() > 0.583);
  CHECK(set.alphas[0].real() < 0.589);
  CHECK(std::abs(set.alphas[0].real() - 0.5857) < 2e-3);
}

TEST_CASE("magic set is closed under conjugation") {
  MagicSet set = magic_angles(canonical_table(16), 6, 16);
  for (auto a : set.alphas) {
    double best = 1e9;
    for (auto b : set.alphas) best = std::min(best, std::abs(b - std::conj(a)));
    CHECK(best < 1e-6);
  }
}

TEST_CASE("ratio diagnostic: q8/q7 approximates 1/alpha1^2") {
  const TraceTable& t = canonical_table(8);
  double q7 = rat::to_double(t.entries.at(7).coeff(1));
  double q8 = rat::to_double(t.entries.at(8).coeff(1));
  CHECK(std::abs(q8 / q7 - 2.91507) / 2.91507 < 0.02);
}

TEST_CASE("magic_angles_numeric from numeric traces") {
  Potential p = canonical_potential();
  std::vector<std::complex<double>> sig;
  for (int l = 2; l <= 12; ++l) sig.push_back(trace_numeric(p, l, {0.0, 0.0}, 60));
  MagicSet set = magic_angles_numeric(sig, 1, 12);
  REQUIRE(!set.alphas.empty());
  CHECK(std::abs(set.alphas[0].real() - 0.5857) < 5e-3);
}

TEST_CASE("flat band at the refined alpha*, gapped at alpha = 0.3") {
  Potential p = canonical_potential();
  MagicSet set = magic_angles(canonical_table(16), 1, 16);
  double alpha_star = set.alphas[0].real();
  FlatBandReport at_star = flat_band_check(p, alpha_star, 3, 16);
  FlatBandReport at_03 = flat_band_check(p, 0.3, 3, 16);
  CHECK(at_star.max_min_singular < 1e-3);
  CHECK(at_03.max_min_singular > 10.0 * at_star.max_min_singular);
  CHECK_THROWS_AS(flat_band_check(p, 0.3, 1, 16), std::invalid_argument);
  CHECK_THROWS_AS(flat_band_check(p, 0.3, 3, 4), std::invalid_argument);
}

TEST_CASE("free operator: zero mode exactly at the protected momentum") {
  Potential p = canonical_potential();
  // at alpha = 0 the block is diagonal; the (1,1) grid entry vanishes at
  // k = (-1,-1), the Dirac momentum in these coordinates
  double s0 = smallest_singular(p, 0.0, -1.0, -1.0, 10);
  CHECK(s0 < 1e-12);
  double s1 = smallest_singular(p, 0.0, 0.4, 0.25, 10);
  CHECK(s1 > 0.1);
}

TEST_CASE("band_profile: sorted, non-negative, gap at alpha*, periodicity") {
  Potential p = canonical_potential();
  MagicSet set = magic_angles(canonical_table(16), 1, 16);
  double alpha_star = set.alphas[0].real();
  auto rows = band_profile(p, alpha_star, 2, 3, 16);
  for (const auto& r : rows) {
    CHECK(std::is_sorted(r.s.begin(), r.s.end()));
    for (double s : r.s) CHECK(s >= 0.0);
    CHECK(r.s[0] < 1e-3);
    CHECK(r.s[1] > 1e-1);
  }
  // k and k + dual lattice vector agree: (k1,k2) and (k1+3,k2) are the same
  // Floquet parameter up to relabeling the window; compare via direct calls
  double a = smallest_singular(p, 0.3, 0.2, 0.1, 20);
  double b = smallest_singular(p, 0.3, 3.2, 0.1, 20);
  CHECK(std::abs(a - b) / a < 1e-4);
}
