// Command-line front end: exact traces, the first-magic-angle certificate,
// numeric magic-angle sets, and flat-band / band-structure scans.

#include <chrono>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "tbg/cache.hpp"
#include "tbg/fredholm.hpp"
#include "tbg/spectra.hpp"

namespace {

using nlohmann::json;
using namespace tbg;

struct GlobalOpts {
  std::string potential_file;
  std::string cache_dir;
  int jobs = 2;
  std::string format = "json";
};

Potential load_potential(const GlobalOpts& g) {
  if (g.potential_file.empty()) return canonical_potential();
  std::ifstream in(g.potential_file);
  if (!in) throw std::invalid_argument("cannot open potential file: " + g.potential_file);
  std::stringstream ss;
  ss << in.rdbuf();
  return Potential::from_json(ss.str());
}

json envelope(const GlobalOpts& g, const Potential& p, const std::string& command,
              long ms, json payload) {
  json j;
  j["tool"] = "tbg";
  j["version"] = kToolVersion;
  j["potential_digest"] = digest_hex(p.digest());
  j["command"] = command;
  j["timing_ms"] = ms;
  j["payload"] = std::move(payload);
  return j;
}

void emit(const json& j, const std::string& out_file) {
  if (out_file.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream out(out_file);
    if (!out) throw std::runtime_error("cannot write " + out_file);
    out << j.dump(2) << "\n";
  }
}

TraceTable traces_with_cache(const Potential& p, int ell_max, const GlobalOpts& g) {
  TraceTable t;
  t.potential_digest = p.digest();
  for (int l = 2; l <= ell_max; ++l) {
    if (auto hit = cache_lookup(g.cache_dir, t.potential_digest, l)) {
      t.entries[l] = *hit;
      t.provenance[l] = "cache";
    }
  }
  for (int l = 2; l <= ell_max; ++l) {
    if (t.entries.count(l)) continue;
    t.entries[l] = trace_exact(p, l, g.jobs);
    t.provenance[l] = "engine";
    cache_store(g.cache_dir, t.potential_digest, l, t.entries[l], "residue");
  }
  return t;
}

int cmd_traces(const GlobalOpts& g, int ell_min, int ell_max, bool oracle_check,
               const std::string& out_file) {
  auto start = std::chrono::steady_clock::now();
  Potential p = load_potential(g);
  TraceTable t = traces_with_cache(p, ell_max, g);
  if (oracle_check) {
    for (int l = std::max(2, ell_min); l <= std::min(4, ell_max); ++l) {
      if (trace_oracle_walks(p, l) != t.entries.at(l))
        throw std::logic_error("oracle disagreement at ell=" + std::to_string(l));
    }
  }
  long ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - start)
                .count();
  if (g.format == "csv") {
    std::ostringstream os;
    os << "ell,q\n";
    for (int l = ell_min; l <= ell_max; ++l)
      os << l << "," << rat::str(t.entries.at(l).coeff(1)) << "\n";
    if (out_file.empty())
      std::cout << os.str();
    else {
      std::ofstream out(out_file);
      out << os.str();
    }
    return 0;
  }
  json payload = json::array();
  for (int l = ell_min; l <= ell_max; ++l) {
    const PiPoly& tau = t.entries.at(l);
    payload.push_back({{"ell", l},
                       {"q", rat::str(tau.coeff(1))},
                       {"tau", rat::str(tau.coeff(1)) + " * pi/sqrt(3)"},
                       {"engine", t.provenance.at(l) == "cache" ? "cache" : "residue"}});
  }
  emit(envelope(g, p, "traces", ms, payload), out_file);
  return 0;
}

int cmd_certify(const GlobalOpts& g, int window_M, int taylor_n, int tail_N,
                const std::string& hs_mode, const std::string& report_file) {
  auto start = std::chrono::steady_clock::now();
  Potential p = load_potential(g);
  if (p.digest() != canonical_potential().digest())
    throw std::invalid_argument(
        "certify: the certificate chain is specific to the canonical potential");
  if (tail_N != taylor_n + 1)
    throw std::invalid_argument("certify: tail N must equal taylor order + 1");
  TraceTable t = traces_with_cache(p, taylor_n, g);
  HsReport hs = hs_norm_certified(window_M, hs_mode, g.jobs);
  Certificate cert = certify_first_magic(t, hs, taylor_n);
  long ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - start)
                .count();
  json payload = json::parse(cert.to_json());
  payload["hs_report"] = {{"M", hs.M},
                          {"mode", hs.mode},
                          {"window_norm_sq", {rat::str(hs.window_norm_sq.lo()),
                                              rat::str(hs.window_norm_sq.hi())}},
                          {"tail_schatten", rat::str(hs.tail_schatten.hi())},
                          {"tail_direct", rat::str(hs.tail_direct.hi())},
                          {"factor27_hi", rat::str(hs.factor27.hi())},
                          {"total", rat::str(hs.total)}};
  emit(envelope(g, p, "certify", ms, payload), report_file);
  if (!cert.verdict) {
    std::cerr << "certificate verdict: FALSE;";
    for (const auto& f : cert.failures) std::cerr << " failed: " << f;
    std::cerr << "\n";
    return 3;
  }
  return 0;
}

int cmd_recheck(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw std::invalid_argument("cannot open report: " + file);
  std::stringstream ss;
  ss << in.rdbuf();
  json j = json::parse(ss.str());
  json cert_part = j.contains("payload") ? j["payload"] : j;
  bool consistent = recheck_certificate(cert_part.dump());
  bool verdict = cert_part.at("verdict").get<bool>();
  std::cout << json({{"recheck_consistent", consistent}, {"verdict", verdict}}).dump(2)
            << "\n";
  if (!consistent) return 2;
  return verdict ? 0 : 3;
}

int cmd_magic(const GlobalOpts& g, int count, int trace_order, bool complex_set,
              const std::string& out_file) {
  auto start = std::chrono::steady_clock::now();
  Potential p = load_potential(g);
  MagicSet set;
  if (trace_order <= 16) {
    TraceTable t = traces_with_cache(p, trace_order, g);
    set = magic_angles(t, count, trace_order);
  } else {
    int M = std::max(80, 4 * trace_order);
    std::vector<std::complex<double>> sig;
    for (int l = 2; l <= trace_order; ++l)
      sig.push_back(trace_numeric(p, l, std::complex<double>(0.0, 0.0), M));
    set = magic_angles_numeric(sig, count, trace_order);
    set.truncation = M;
  }
  long ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - start)
                .count();
  if (g.format == "csv") {
    std::ostringstream os;
    os << "re_alpha,im_alpha,multiplicity\n";
    for (size_t i = 0; i < set.alphas.size(); ++i) {
      if (!complex_set && std::abs(set.alphas[i].imag()) > 1e-6) continue;
      os << set.alphas[i].real() << "," << set.alphas[i].imag() << ","
         << set.multiplicities[i] << "\n";
    }
    if (out_file.empty())
      std::cout << os.str();
    else {
      std::ofstream out(out_file);
      out << os.str();
    }
    return 0;
  }
  json payload;
  payload["trace_order"] = set.trace_order;
  payload["truncation"] = set.truncation;
  payload["alphas"] = json::array();
  for (size_t i = 0; i < set.alphas.size(); ++i) {
    if (!complex_set && std::abs(set.alphas[i].imag()) > 1e-6) continue;
    payload["alphas"].push_back({{"re", set.alphas[i].real()},
                                 {"im", set.alphas[i].imag()},
                                 {"multiplicity", set.multiplicities[i]}});
  }
  emit(envelope(g, p, "magic", ms, payload), out_file);
  return 0;
}

int cmd_flatband(const GlobalOpts& g, double alpha, int grid, int M) {
  auto start = std::chrono::steady_clock::now();
  Potential p = load_potential(g);
  FlatBandReport rep = flat_band_check(p, alpha, grid, M);
  long ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - start)
                .count();
  json payload;
  payload["alpha"] = alpha;
  payload["grid"] = grid;
  payload["truncation"] = M;
  payload["max_min_singular"] = rep.max_min_singular;
  payload["per_k"] = json::array();
  for (const auto& row : rep.per_k)
    payload["per_k"].push_back({{"k1", row[0]}, {"k2", row[1]}, {"s_min", row[2]}});
  emit(envelope(g, p, "flatband", ms, payload), "");
  return 0;
}

int cmd_bands(const GlobalOpts& g, double alpha, int grid, int num, int M,
              const std::string& out_file) {
  Potential p = load_potential(g);
  auto rows = band_profile(p, alpha, grid, num, M);
  std::ostringstream os;
  os << "k1,k2";
  for (int j = 1; j <= num; ++j) os << ",s" << j;
  os << "\n";
  for (const auto& r : rows) {
    os << r.k1 << "," << r.k2;
    for (double s : r.s) os << "," << s;
    os << "\n";
  }
  if (out_file.empty())
    std::cout << os.str();
  else {
    std::ofstream out(out_file);
    if (!out) throw std::runtime_error("cannot write " + out_file);
    out << os.str();
  }
  return 0;
}

int cmd_potential(const GlobalOpts& g) {
  Potential p = load_potential(g);
  p.validate();
  std::cout << p.to_json() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"chiral TBG magic angles: exact traces, regularized determinant, "
               "certified first magic angle"};
  app.set_version_flag("--version", std::string(kToolVersion));
  GlobalOpts g;
  app.add_option("--potential", g.potential_file, "potential JSON file (default: canonical)");
  std::string cache_flag;
  app.add_option("--cache", cache_flag, "cache directory for exact traces");
  app.add_option("--jobs", g.jobs, "worker pool size")->check(CLI::PositiveNumber);
  app.add_option("--format", g.format, "output format")
      ->check(CLI::IsMember({"json", "csv"}));
  app.require_subcommand(1);

  auto* tr = app.add_subcommand("traces", "exact traces sigma_ell = (pi/sqrt3) q_ell");
  int ell_min = 2, ell_max = 8;
  bool oracle_check = false;
  std::string tr_out;
  tr->add_option("--ell-min", ell_min)->check(CLI::Range(2, 64));
  tr->add_option("--ell-max", ell_max)->check(CLI::Range(2, 64));
  tr->add_flag("--oracle-check", oracle_check, "cross-check ell<=4 against the walk oracle");
  tr->add_option("--out", tr_out, "output file");

  auto* ce = app.add_subcommand("certify", "certified first real magic angle");
  int window_M = 760, taylor_n = 16, tail_N = 17;
  std::string hs_mode = "dyadic", report_file, recheck_file;
  ce->add_option("--window-M", window_M)->check(CLI::Range(1, 100000));
  ce->add_option("--taylor-n", taylor_n)->check(CLI::Range(4, 64));
  ce->add_option("--tail-N", tail_N)->check(CLI::Range(5, 65));
  ce->add_option("--hs-mode", hs_mode)->check(CLI::IsMember({"dyadic", "exact"}));
  ce->add_option("--report", report_file, "write the certificate JSON here");
  ce->add_option("--recheck", recheck_file, "re-verify a stored report instead");

  auto* mg = app.add_subcommand("magic", "numeric (complex) magic-angle set");
  int count = 12, trace_order = 16;
  bool complex_set = false;
  std::string mg_out;
  mg->add_option("--count", count)->check(CLI::Range(1, 64));
  mg->add_option("--trace-order", trace_order)->check(CLI::Range(4, 128));
  mg->add_flag("--complex", complex_set, "include complex magic alphas");
  mg->add_option("--out", mg_out, "output file");

  auto* fb = app.add_subcommand("flatband", "flat-band check over a k-grid");
  double fb_alpha = 0.5857;
  int fb_grid = 5, fb_M = 30;
  fb->add_option("--alpha", fb_alpha)->required();
  fb->add_option("--grid", fb_grid)->check(CLI::Range(2, 64));
  fb->add_option("--truncation", fb_M)->check(CLI::Range(8, 256));

  auto* bd = app.add_subcommand("bands", "lowest singular-value surfaces, CSV");
  double bd_alpha = 0.3;
  int bd_grid = 8, bd_num = 5, bd_M = 30;
  std::string bd_out;
  bd->add_option("--alpha", bd_alpha)->required();
  bd->add_option("--grid", bd_grid)->check(CLI::Range(2, 128));
  bd->add_option("--num", bd_num)->check(CLI::Range(1, 32));
  bd->add_option("--truncation", bd_M)->check(CLI::Range(8, 256));
  bd->add_option("--out", bd_out, "output CSV file");

  auto* po = app.add_subcommand("potential", "validate and print the completed potential");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  g.cache_dir = resolve_cache_dir(cache_flag);
  try {
    if (tr->parsed()) {
      if (ell_min > ell_max)
        throw std::invalid_argument("traces: --ell-min must be <= --ell-max");
      return cmd_traces(g, ell_min, ell_max, oracle_check, tr_out);
    }
    if (ce->parsed()) {
      if (!recheck_file.empty()) return cmd_recheck(recheck_file);
      return cmd_certify(g, window_M, taylor_n, tail_N, hs_mode, report_file);
    }
    if (mg->parsed()) return cmd_magic(g, count, trace_order, complex_set, mg_out);
    if (fb->parsed()) return cmd_flatband(g, fb_alpha, fb_grid, fb_M);
    if (bd->parsed()) return cmd_bands(g, bd_alpha, bd_grid, bd_num, bd_M, bd_out);
    if (po->parsed()) return cmd_potential(g);
  } catch (const SymmetryError& e) {
    std::cerr << nlohmann::json({{"error", e.what()}, {"kind", "validation"}}).dump() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << nlohmann::json({{"error", e.what()}, {"kind", "validation"}}).dump() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << nlohmann::json({{"error", e.what()}, {"kind", "internal"}}).dump() << "\n";
    return 1;
  }
  return 2;
}
