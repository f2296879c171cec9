#pragma once

// On-disk cache of canonical expansion files keyed by (constructor name, box, modulus).

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>

namespace smf {

std::string sha256_hex(const std::string& data);

struct CacheKey {
  std::string name;
  int box = 0;
  std::optional<std::uint64_t> modulus;
};

struct CacheStats {
  std::size_t hits = 0;
  std::size_t misses = 0;
  std::size_t evictions = 0;
};

class ExpansionCache {
public:
  explicit ExpansionCache(std::filesystem::path dir);
  /// SMF_CACHE_DIR, or ./.smf-cache.
  static ExpansionCache from_env();

  const std::filesystem::path& dir() const { return dir_; }
  std::filesystem::path entry_path(const CacheKey& key) const;

  /// Content of an intact entry. Entries whose length or sha256 disagree with the sidecar are deleted.
  std::optional<std::string> lookup(const CacheKey& key);
  void store(const CacheKey& key, const std::string& content);
  std::string get_or_compute(const CacheKey& key, const std::function<std::string()>& compute);

  const CacheStats& stats() const { return stats_; }

private:
  std::filesystem::path dir_;
  CacheStats stats_;
};

}  // namespace smf
