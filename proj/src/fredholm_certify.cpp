#include "tbg/fredholm.hpp"

#include <nlohmann/json.hpp>

namespace tbg {

namespace {

Rational factorial(int n) {
  Rational r(1);
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

nlohmann::json interval_json(const RatInterval& v) {
  return {{"lo", rat::str(v.lo())}, {"hi", rat::str(v.hi())}};
}

RatInterval interval_from_json(const nlohmann::json& j) {
  return RatInterval(rat::parse(j.at("lo").get<std::string>()),
                     rat::parse(j.at("hi").get<std::string>()));
}

}  // namespace

Certificate certify_first_magic(const TraceTable& table, const HsReport& hs,
                                int taylor_order) {
  const int n = taylor_order;
  if (n < 4) throw std::invalid_argument("certify: taylor order too small");
  auto missing = table.missing(2, n);
  if (!missing.empty()) throw MissingTraces(missing);

  Certificate cert;
  cert.taylor_order = n;
  cert.hs_window_bound = hs.window_norm_sq.sqrt_outward();
  cert.hs_total_bound = hs.total;
  cert.interval = {rat::of(583, 1000), rat::of(589, 1000)};
  cert.op_norm_bound = Rational(9);
  cert.alpha_lower = rat::of(1, 3);

  DetPoly det = det2_taylor(table, n);
  cert.f_left = det.eval_interval(cert.interval.first);
  cert.f_right = det.eval_interval(cert.interval.second);

  // g(3/5) = sum_{k=2..min(20,n)} a_k with the endpoint chosen per the sign of
  // mu_k (-1)^k; each a_k bounds sup over (1/3, 3/5) of the k-th f' term
  const Rational lo_end = rat::of(1, 3), hi_end = rat::of(3, 5);
  RatInterval g_acc;
  for (int k = 2; k <= std::min(20, n); ++k) {
    Rational scale = rat::of(2, 1) / factorial(k - 1);
    if (k % 2 == 1) scale = -scale;  // (-1)^k
    auto term_at = [&](const Rational& a) {
      Rational apow(1);
      for (int i = 0; i < 2 * k - 1; ++i) apow *= a;
      return pipoly_eval(det.mu[k].scaled(scale * apow));
    };
    RatInterval signed_mu = pipoly_eval(det.mu[k].scaled(scale));
    RatInterval ak;
    if (signed_mu.hi() < 0) {
      ak = term_at(lo_end);
    } else if (signed_mu.lo() > 0) {
      ak = term_at(hi_end);
    } else {
      // sign undecided: take the upper hull of both endpoint values
      RatInterval a1 = term_at(lo_end), a2 = term_at(hi_end);
      ak = RatInterval(std::min(a1.lo(), a2.lo()), std::max(a1.hi(), a2.hi()));
    }
    g_acc = g_acc + ak;
  }
  cert.g_bound = g_acc;

  cert.tail_r0 = tail_bound(n, 0, cert.hs_total_bound, rat::of(3, 5));
  cert.tail_r1 = tail_bound(n, 1, cert.hs_total_bound, rat::of(3, 5));

  auto check = [&cert](bool ok, const std::string& name) {
    if (!ok) cert.failures.push_back(name);
  };
  check(cert.f_left.lo() > rat::of(1, 40), "f(0.583) > 1/40");
  check(cert.f_right.hi() < rat::of(-1, 40), "f(0.589) < -1/40");
  check(cert.g_bound.hi() < rat::of(-7, 10), "g(3/5) < -7/10");
  check(cert.tail_r0.hi() <= rat::of(1, 50), "r0 <= 1/50");
  check(cert.tail_r1.hi() <= rat::of(1, 2), "r1 <= 1/2");
  check(cert.hs_total_bound <= rat::of(11, 2), "hs_total <= 11/2");
  cert.verdict = cert.failures.empty();
  return cert;
}

std::string Certificate::to_json() const {
  nlohmann::json j;
  j["kind"] = "first-magic-angle-certificate";
  j["taylor_order"] = taylor_order;
  j["hs_window_bound"] = interval_json(hs_window_bound);
  j["hs_total_bound"] = rat::str(hs_total_bound);
  j["tail_r0"] = interval_json(tail_r0);
  j["tail_r1"] = interval_json(tail_r1);
  j["f_left"] = interval_json(f_left);
  j["f_right"] = interval_json(f_right);
  j["g_bound"] = interval_json(g_bound);
  j["interval"] = {rat::str(interval.first), rat::str(interval.second)};
  j["op_norm_bound"] = rat::str(op_norm_bound);
  j["alpha_lower"] = rat::str(alpha_lower);
  j["verdict"] = verdict;
  j["failures"] = failures;
  j["checks"] = {
      {{"name", "f(0.583) > 1/40"}, {"lhs_lo", rat::str(f_left.lo())}, {"rhs", "1/40"}},
      {{"name", "f(0.589) < -1/40"}, {"lhs_hi", rat::str(f_right.hi())}, {"rhs", "-1/40"}},
      {{"name", "g(3/5) < -7/10"}, {"lhs_hi", rat::str(g_bound.hi())}, {"rhs", "-7/10"}},
      {{"name", "r0 <= 1/50"}, {"lhs_hi", rat::str(tail_r0.hi())}, {"rhs", "1/50"}},
      {{"name", "r1 <= 1/2"}, {"lhs_hi", rat::str(tail_r1.hi())}, {"rhs", "1/2"}},
      {{"name", "hs_total <= 11/2"}, {"lhs", rat::str(hs_total_bound)}, {"rhs", "11/2"}},
  };
  // simple real eigenvalue 1/alpha*^2 of A_k on the scalar space; corresponds
  // to flat-band multiplicity 2 at the Hamiltonian level (spectral doubling)
  j["multiplicity_note"] =
      "simple eigenvalue of A_k; Hamiltonian flat band has multiplicity 2 by "
      "the two-component doubling";
  return j.dump(2);
}

Certificate Certificate::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (j.at("kind").get<std::string>() != "first-magic-angle-certificate")
    throw std::invalid_argument("not a certificate document");
  Certificate c;
  c.taylor_order = j.at("taylor_order").get<int>();
  c.hs_window_bound = interval_from_json(j.at("hs_window_bound"));
  c.hs_total_bound = rat::parse(j.at("hs_total_bound").get<std::string>());
  c.tail_r0 = interval_from_json(j.at("tail_r0"));
  c.tail_r1 = interval_from_json(j.at("tail_r1"));
  c.f_left = interval_from_json(j.at("f_left"));
  c.f_right = interval_from_json(j.at("f_right"));
  c.g_bound = interval_from_json(j.at("g_bound"));
  c.interval = {rat::parse(j.at("interval").at(0).get<std::string>()),
                rat::parse(j.at("interval").at(1).get<std::string>())};
  c.op_norm_bound = rat::parse(j.at("op_norm_bound").get<std::string>());
  c.alpha_lower = rat::parse(j.at("alpha_lower").get<std::string>());
  c.verdict = j.at("verdict").get<bool>();
  for (const auto& f : j.at("failures")) c.failures.push_back(f.get<std::string>());
  return c;
}

bool Certificate::operator==(const Certificate& o) const {
  auto eq = [](const RatInterval& a, const RatInterval& b) {
    return a.lo() == b.lo() && a.hi() == b.hi();
  };
  return taylor_order == o.taylor_order && eq(hs_window_bound, o.hs_window_bound) &&
         hs_total_bound == o.hs_total_bound && eq(tail_r0, o.tail_r0) &&
         eq(tail_r1, o.tail_r1) && eq(f_left, o.f_left) && eq(f_right, o.f_right) &&
         eq(g_bound, o.g_bound) && interval == o.interval &&
         op_norm_bound == o.op_norm_bound && alpha_lower == o.alpha_lower &&
         verdict == o.verdict && failures == o.failures;
}

bool recheck_certificate(const std::string& json_text) {
  Certificate c = Certificate::from_json(json_text);
  bool ok = true;
  ok &= c.f_left.lo() > rat::of(1, 40);
  ok &= c.f_right.hi() < rat::of(-1, 40);
  ok &= c.g_bound.hi() < rat::of(-7, 10);
  ok &= c.tail_r0.hi() <= rat::of(1, 50);
  ok &= c.tail_r1.hi() <= rat::of(1, 2);
  ok &= c.hs_total_bound <= rat::of(11, 2);
  return ok == c.verdict && (ok || !c.failures.empty());
}

}  // namespace tbg
