#include "tbg/cache.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace tbg {

namespace fs = std::filesystem;

std::string digest_hex(std::uint64_t digest) {
  std::ostringstream os;
  os << std::hex << digest;
  return os.str();
}

namespace {

fs::path entry_path(const std::string& dir, std::uint64_t digest, int ell) {
  return fs::path(dir) / (digest_hex(digest) + "-ell" + std::to_string(ell) + ".json");
}

}  // namespace

std::optional<PiPoly> cache_lookup(const std::string& dir, std::uint64_t digest,
                                   int ell) {
  if (dir.empty()) return std::nullopt;
  std::error_code ec;
  fs::path path = entry_path(dir, digest, ell);
  if (!fs::exists(path, ec)) return std::nullopt;
  try {
    std::ifstream in(path);
    if (!in) return std::nullopt;
    nlohmann::json j = nlohmann::json::parse(in);
    if (j.at("potential_digest").get<std::string>() != digest_hex(digest) ||
        j.at("ell").get<int>() != ell)
      throw std::runtime_error("key mismatch");
    std::vector<std::string> coeffs;
    for (const auto& s : j.at("payload").at("tau")) coeffs.push_back(s.get<std::string>());
    return PiPoly::deserialize(coeffs);
  } catch (const std::exception& e) {
    std::cerr << "warning: ignoring corrupt cache entry " << path.string() << " ("
              << e.what() << ")\n";
    return std::nullopt;
  }
}

bool cache_store(const std::string& dir, std::uint64_t digest, int ell,
                 const PiPoly& value, const std::string& engine) {
  if (dir.empty()) return false;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) return false;
  nlohmann::json j;
  j["tool"] = "tbg";
  j["version"] = kToolVersion;
  j["potential_digest"] = digest_hex(digest);
  j["ell"] = ell;
  j["payload"] = {{"tau", value.serialize()}, {"engine", engine}};
  fs::path path = entry_path(dir, digest, ell);
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) return false;
    out << j.dump(2) << "\n";
    if (!out) return false;
  }
  fs::rename(tmp, path, ec);
  return !ec;
}

std::string resolve_cache_dir(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  const char* env = std::getenv("TBG_CACHE_DIR");
  return env ? std::string(env) : std::string();
}

}  // namespace tbg
