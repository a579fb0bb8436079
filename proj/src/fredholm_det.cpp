#include "tbg/fredholm.hpp"

#include <sstream>

namespace tbg {

namespace {

Rational factorial(int n) {
  Rational r(1);
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

}  // namespace

PiPoly DetPoly::eval_pipoly(const Rational& alpha) const {
  Rational beta = alpha * alpha;
  PiPoly acc;
  Rational z(1);  // (-beta)^j / j!
  for (int j = 0; j < static_cast<int>(mu.size()); ++j) {
    if (j > 0) z *= -beta / j;
    acc += mu[j].scaled(z);
  }
  return acc;
}

RatInterval DetPoly::eval_interval(const Rational& alpha) const {
  return pipoly_eval(eval_pipoly(alpha));
}

std::vector<std::complex<double>> DetPoly::beta_coefficients() const {
  double pis3 = pi_over_sqrt3().mid_double();
  std::vector<std::complex<double>> c(mu.size());
  double z = 1.0;
  for (size_t j = 0; j < mu.size(); ++j) {
    if (j > 0) z *= -1.0 / static_cast<double>(j);
    c[j] = mu[j].eval_double(pis3) * z;
  }
  return c;
}

std::complex<double> DetPoly::eval_beta(std::complex<double> beta) const {
  auto c = beta_coefficients();
  std::complex<double> acc = 0.0;
  for (size_t j = c.size(); j-- > 0;) acc = acc * beta + c[j];
  return acc;
}

DetPoly plemelj_smithies(const std::vector<PiPoly>& sigma_from_2, int n) {
  if (static_cast<int>(sigma_from_2.size()) < std::max(0, n - 1))
    throw std::invalid_argument("plemelj_smithies: need sigma_2..sigma_n");
  // det2(1 - zA) = exp(-sum_{j>=2} sigma_j z^j / j) =: sum g_j z^j,
  // n g_n = -sum_{j=2..n} sigma_j g_{n-j}, mu_n = (-1)^n n! g_n
  std::vector<PiPoly> g(n + 1);
  g[0] = PiPoly::one();
  for (int k = 1; k <= n; ++k) {
    PiPoly acc;
    for (int j = 2; j <= k; ++j)
      acc += sigma_from_2[j - 2] * g[k - j];
    g[k] = acc.scaled(rat::of(-1, k));
  }
  DetPoly d;
  d.mu.resize(n + 1);
  for (int k = 0; k <= n; ++k) {
    Rational s = factorial(k);
    if (k % 2 == 1) s = -s;
    d.mu[k] = g[k].scaled(s);
  }
  return d;
}

PiPoly plemelj_smithies_det_oracle(const std::vector<PiPoly>& sigma_from_2, int j) {
  if (j == 0) return PiPoly::one();
  // entries M[r][c], 1-based: sigma_{r-c+1} below the diagonal (sigma_1 = 0),
  // j-r on the superdiagonal, zero elsewhere
  auto entry = [&](int r, int c) -> PiPoly {
    if (c == r + 1) return PiPoly(Rational(j - r));
    if (c > r + 1 || c == r) return PiPoly();
    int idx = r - c + 1;  // sigma index, >= 2 here
    if (idx - 2 >= static_cast<int>(sigma_from_2.size()))
      throw std::invalid_argument("det oracle: sigma table too short");
    return sigma_from_2[idx - 2];
  };
  int max_deg = 0;
  for (const auto& s : sigma_from_2) max_deg = std::max(max_deg, s.degree());
  int points = j * std::max(1, max_deg) + 1;

  // evaluate the determinant at rational points Pi = t and interpolate
  std::vector<Rational> xs, ys;
  for (int t = 0; t < points; ++t) {
    Rational x(t);
    std::vector<std::vector<Rational>> m(j, std::vector<Rational>(j));
    for (int r = 1; r <= j; ++r)
      for (int c = 1; c <= j; ++c) {
        PiPoly e = entry(r, c);
        Rational v(0);
        Rational xp(1);
        for (int d = 0; d <= e.degree(); ++d) {
          v += e.coeff(d) * xp;
          xp *= x;
        }
        m[r - 1][c - 1] = v;
      }
    // Gaussian elimination with exact pivoting
    Rational det(1);
    bool zero = false;
    for (int col = 0; col < j && !zero; ++col) {
      int piv = -1;
      for (int r = col; r < j; ++r)
        if (m[r][col] != 0) { piv = r; break; }
      if (piv < 0) { zero = true; break; }
      if (piv != col) {
        std::swap(m[piv], m[col]);
        det = -det;
      }
      det *= m[col][col];
      Rational inv = Rational(1) / m[col][col];
      for (int r = col + 1; r < j; ++r) {
        if (m[r][col] == 0) continue;
        Rational f = m[r][col] * inv;
        for (int c = col; c < j; ++c) m[r][c] -= f * m[col][c];
      }
    }
    xs.push_back(x);
    ys.push_back(zero ? Rational(0) : det);
  }

  // Lagrange interpolation
  PiPoly acc;
  for (int i = 0; i < points; ++i) {
    PiPoly basis = PiPoly::one();
    Rational denom(1);
    for (int t = 0; t < points; ++t) {
      if (t == i) continue;
      basis = basis * PiPoly(std::vector<Rational>{-xs[t], Rational(1)});
      denom *= xs[i] - xs[t];
    }
    acc += basis.scaled(ys[i] / denom);
  }
  return acc;
}

std::vector<PiPoly> newton_elementary(const std::vector<PiPoly>& power_sums, int N) {
  if (static_cast<int>(power_sums.size()) < N)
    throw std::invalid_argument("newton_elementary: need p_1..p_N");
  std::vector<PiPoly> e(N + 1);
  e[0] = PiPoly::one();
  for (int n = 1; n <= N; ++n) {
    PiPoly acc;
    for (int i = 1; i <= n; ++i) {
      PiPoly term = e[n - i] * power_sums[i - 1];
      if (i % 2 == 0) term = -term;
      acc += term;
    }
    e[n] = acc.scaled(rat::of(1, n));
  }
  return {e.begin() + 1, e.end()};
}

MissingTraces::MissingTraces(const std::vector<int>& ls)
    : std::invalid_argument([&ls] {
        std::ostringstream os;
        os << "trace table is missing sigma_ell for ell =";
        for (int l : ls) os << " " << l;
        return os.str();
      }()),
      ells(ls) {}

DetPoly det2_taylor(const TraceTable& table, int n) {
  auto missing = table.missing(2, n);
  if (!missing.empty()) throw MissingTraces(missing);
  std::vector<PiPoly> sigma;
  for (int l = 2; l <= n; ++l) sigma.push_back(table.entries.at(l));
  return plemelj_smithies(sigma, n);
}

RatInterval tail_bound(int n, int m, const Rational& hs, const Rational& alpha) {
  if (m != 0 && m != 1) throw std::invalid_argument("tail_bound: m must be 0 or 1");
  if (hs < 0 || alpha < 0) throw std::invalid_argument("tail_bound: negative input");
  if (alpha == 0) return RatInterval(Rational(0));
  const int N = n + 1;
  RatInterval nu = sqrt_e_enclosure() * RatInterval(hs * alpha * alpha);
  if (nu.hi() * nu.hi() >= N)
    throw std::domain_error("tail_bound: geometric domination fails (nu >= sqrt(N))");
  RatInterval sqrtN = RatInterval(Rational(N)).sqrt_outward();
  RatInterval q = nu / sqrtN;
  RatInterval one(Rational(1));
  RatInterval r = q.pow(N - m) / (one - q);
  if (m == 1) r = r * (RatInterval(rat::of(2, 1)) * nu / RatInterval(alpha));
  return r;
}

}  // namespace tbg
