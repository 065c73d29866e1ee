#pragma once

// On-disk eigen-symbol cache: one JSON file per (N, k, eigen-data fingerprint),
// written to a temporary name and renamed into place.

#include "mtlambda/modsym.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace mtlambda {

inline constexpr const char* kCacheDirEnv = "MTLAMBDA_CACHE_DIR";

/// 16 hex digits of FNV-1a over "N;k;l=a_l;..." for the supplied eigenvalues.
std::string eigen_fingerprint(std::uint64_t level, unsigned weight, const std::map<std::uint64_t, Integer>& eigen_data);

struct CacheEntryInfo {
  std::filesystem::path path;
  std::uint64_t level = 0;
  unsigned weight = 0;
  std::string fingerprint;
  std::uintmax_t bytes = 0;
};

class EigenCache {
 public:
  explicit EigenCache(std::filesystem::path dir);

  /// Flag value if given, else $MTLAMBDA_CACHE_DIR, else nullopt (caching off).
  static std::optional<std::filesystem::path> resolve_dir(const std::optional<std::string>& flag);

  const std::filesystem::path& dir() const { return dir_; }
  std::filesystem::path entry_path(std::uint64_t level, unsigned weight, const std::string& fingerprint) const;

  /// Nullopt when absent; a malformed or mismatched file is treated as absent.
  std::optional<EigenSymbol> load(std::uint64_t level, unsigned weight, const std::string& fingerprint) const;
  void store(const EigenSymbol& phi, const std::string& fingerprint) const;

  std::vector<CacheEntryInfo> list() const;
  /// Removes cache entries (and stray temporaries); returns the number removed.
  std::size_t clear() const;

 private:
  std::filesystem::path dir_;
};

}  // namespace mtlambda
