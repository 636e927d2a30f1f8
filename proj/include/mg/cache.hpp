#ifndef MG_CACHE_HPP
#define MG_CACHE_HPP

#include <optional>
#include <string>

#include "sheaf.hpp"

namespace mg {

struct CacheConfig {
  std::string dir;
  bool enabled = true;
};

std::string default_cache_dir();  // $MG_CACHE_DIR or ".mg-cache"
std::string fnv1a_hex(const std::string& data);

// BMP sheaf cache, keyed by (cartan label, J, w word, bound).  Entries carry
// a content hash over the payload and are re-verified before reuse; a
// corrupted or mismatched entry is ignored.
std::string bmp_cache_key(const std::string& label, const std::vector<int>& J,
                          const std::string& w_word, int bound);
std::optional<nlohmann::json> cache_load(const CacheConfig& cfg, const std::string& key);
void cache_store(const CacheConfig& cfg, const std::string& key,
                 const nlohmann::json& payload);
std::vector<std::string> cache_list(const CacheConfig& cfg);
int cache_clear(const CacheConfig& cfg);

// sheaf (de)serialization against a fixed graph
nlohmann::json sheaf_payload(const Sheaf& f, const std::string& label,
                             const std::vector<int>& J, const std::string& w_word,
                             int bound);
Sheaf sheaf_from_payload(std::shared_ptr<const MomentGraph> graph,
                         const nlohmann::json& payload);

// compute through the cache
Sheaf bmp_sheaf_cached(const CacheConfig& cfg, std::shared_ptr<const MomentGraph> graph,
                       const std::string& label, const std::vector<int>& J, int w,
                       int bound);

}  // namespace mg

#endif
