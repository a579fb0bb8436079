#pragma once

// File cache for exact trace values: one JSON file per (potential digest,
// ell), exact strings only. Corrupt entries are ignored with a warning and
// recomputed; I/O failures degrade to cache-off operation.

#include <cstdint>
#include <optional>
#include <string>

#include "tbg/pipoly.hpp"

namespace tbg {

inline constexpr const char* kToolVersion = "0.2.0";

std::string digest_hex(std::uint64_t digest);

std::optional<PiPoly> cache_lookup(const std::string& dir, std::uint64_t digest,
                                   int ell);

// store-then-lookup round-trips exactly; write is tmp+rename
bool cache_store(const std::string& dir, std::uint64_t digest, int ell,
                 const PiPoly& value, const std::string& engine);

// cache dir resolution: --cache flag, else TBG_CACHE_DIR, else empty (off)
std::string resolve_cache_dir(const std::string& flag_value);

}  // namespace tbg
