#include "smf/cache.hpp"

#include <openssl/evp.h>

#include <cctype>
#include <cstdlib>
#include <iomanip>
#include <sstream>

#include "smf/io.hpp"

namespace smf {

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) throw std::runtime_error("sha256 failed");
  std::ostringstream out;
  for (unsigned int i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  return out.str();
}

ExpansionCache::ExpansionCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

ExpansionCache ExpansionCache::from_env() {
  const char* env = std::getenv("SMF_CACHE_DIR");
  return ExpansionCache(env && *env ? std::filesystem::path(env) : std::filesystem::path(".smf-cache"));
}

std::filesystem::path ExpansionCache::entry_path(const CacheKey& key) const {
  std::string safe;
  for (char c : key.name) safe += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
  // The short hash keeps names that sanitize identically apart.
  const std::string tag = sha256_hex(key.name).substr(0, 8);
  const std::string mod = key.modulus ? "p" + std::to_string(*key.modulus) : "exact";
  return dir_ / (safe + "-" + tag + "-b" + std::to_string(key.box) + "-" + mod + ".json");
}

namespace {

std::filesystem::path sidecar(const std::filesystem::path& entry) { return std::filesystem::path(entry.string() + ".sha256"); }

std::string sidecar_text(const std::string& content) { return std::to_string(content.size()) + " " + sha256_hex(content) + "\n"; }

}  // namespace

std::optional<std::string> ExpansionCache::lookup(const CacheKey& key) {
  const auto path = entry_path(key);
  std::error_code ec;
  if (!std::filesystem::exists(path, ec)) return std::nullopt;
  std::string content, meta;
  try {
    content = read_file(path.string());
    meta = read_file(sidecar(path).string());
  } catch (const IoError&) {
    meta.clear();
  }
  if (!meta.empty() && meta == sidecar_text(content)) return content;
  std::filesystem::remove(path, ec);
  std::filesystem::remove(sidecar(path), ec);
  ++stats_.evictions;
  return std::nullopt;
}

void ExpansionCache::store(const CacheKey& key, const std::string& content) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) throw IoError("cannot create cache directory '" + dir_.string() + "'");
  const auto path = entry_path(key);
  // Content first, sidecar last: a reader never sees a sidecar for missing content.
  write_file_atomic(path.string(), content);
  write_file_atomic(sidecar(path).string(), sidecar_text(content));
}

std::string ExpansionCache::get_or_compute(const CacheKey& key, const std::function<std::string()>& compute) {
  if (auto hit = lookup(key)) {
    ++stats_.hits;
    return *hit;
  }
  ++stats_.misses;
  std::string content = compute();
  store(key, content);
  return content;
}

}  // namespace smf
