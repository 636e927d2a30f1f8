#include "mg/cache.hpp"

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>

namespace fs = std::filesystem;

namespace mg {

namespace {
std::mutex cache_mutex;

std::string sanitize(const std::string& s) {
  std::string out;
  for (char c : s) out += (std::isalnum((unsigned char)c) ? c : '-');
  return out;
}
}  // namespace

std::string default_cache_dir() {
  if (const char* env = std::getenv("MG_CACHE_DIR")) return env;
  return ".mg-cache";
}

std::string fnv1a_hex(const std::string& data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

std::string bmp_cache_key(const std::string& label, const std::vector<int>& J,
                          const std::string& w_word, int bound) {
  std::ostringstream os;
  os << "bmp_" << sanitize(label) << "_J";
  for (int s : J) os << (s + 1);
  os << "_w" << sanitize(w_word.empty() ? "e" : w_word) << "_b" << bound;
  return os.str();
}

std::optional<nlohmann::json> cache_load(const CacheConfig& cfg, const std::string& key) {
  if (!cfg.enabled) return std::nullopt;
  std::lock_guard<std::mutex> lock(cache_mutex);
  fs::path p = fs::path(cfg.dir) / (key + ".json");
  std::ifstream in(p);
  if (!in) return std::nullopt;
  nlohmann::json j;
  try {
    in >> j;
  } catch (...) {
    return std::nullopt;
  }
  if (!j.contains("payload") || !j.contains("content_hash")) return std::nullopt;
  if (fnv1a_hex(j["payload"].dump()) != j["content_hash"].get<std::string>())
    return std::nullopt;  // corrupted entry: recompute
  return j["payload"];
}

void cache_store(const CacheConfig& cfg, const std::string& key,
                 const nlohmann::json& payload) {
  if (!cfg.enabled) return;
  std::lock_guard<std::mutex> lock(cache_mutex);
  std::error_code ec;
  fs::create_directories(cfg.dir, ec);
  nlohmann::json j;
  j["key"] = key;
  j["payload"] = payload;
  j["content_hash"] = fnv1a_hex(payload.dump());
  std::ofstream out(fs::path(cfg.dir) / (key + ".json"));
  out << j.dump() << "\n";
}

std::vector<std::string> cache_list(const CacheConfig& cfg) {
  std::vector<std::string> out;
  std::error_code ec;
  for (auto& entry : fs::directory_iterator(cfg.dir, ec))
    if (entry.path().extension() == ".json") out.push_back(entry.path().stem().string());
  std::sort(out.begin(), out.end());
  return out;
}

int cache_clear(const CacheConfig& cfg) {
  int n = 0;
  std::error_code ec;
  for (auto& entry : fs::directory_iterator(cfg.dir, ec))
    if (entry.path().extension() == ".json") {
      fs::remove(entry.path(), ec);
      ++n;
    }
  return n;
}

nlohmann::json sheaf_payload(const Sheaf& f, const std::string& label,
                             const std::vector<int>& J, const std::string& w_word,
                             int bound) {
  nlohmann::json j = f.to_json();
  j["type"] = label;
  nlohmann::json jj = nlohmann::json::array();
  for (int s : J) jj.push_back(s + 1);
  j["parabolic"] = jj;
  j["w"] = w_word;
  j["bound"] = bound;
  return j;
}

Sheaf sheaf_from_payload(std::shared_ptr<const MomentGraph> graph,
                         const nlohmann::json& payload) {
  Sheaf f;
  f.graph = graph;
  f.rank = graph->rank;
  f.stalk_gens.resize(graph->num_vertices());
  const auto& stalks = payload.at("stalks");
  for (int v = 0; v < graph->num_vertices(); ++v)
    f.stalk_gens[v] = stalks.at(v).at("gens").get<std::vector<int>>();
  f.edges.resize(graph->edges.size());
  const auto& edges = payload.at("edges");
  for (std::size_t e = 0; e < f.edges.size(); ++e) {
    const auto& je = edges.at(e);
    auto& ed = f.edges[e];
    ed.ann = LinearForm(je.at("annihilator").get<std::vector<long long>>());
    ed.gens = je.at("gens").get<std::vector<int>>();
    auto load_rho = [](const nlohmann::json& rows) {
      std::vector<std::vector<GradedPoly>> rho;
      for (auto& row : rows) {
        std::vector<GradedPoly> r;
        for (auto& p : row) r.push_back(GradedPoly::from_json(p));
        rho.push_back(std::move(r));
      }
      return rho;
    };
    ed.rho_from = load_rho(je.at("rho_from"));
    ed.rho_to = load_rho(je.at("rho_to"));
  }
  return f;
}

Sheaf bmp_sheaf_cached(const CacheConfig& cfg, std::shared_ptr<const MomentGraph> graph,
                       const std::string& label, const std::vector<int>& J, int w,
                       int bound) {
  std::string word = graph->vertex_word(w);
  std::string key = bmp_cache_key(label, J, word, bound);
  if (auto payload = cache_load(cfg, key)) return sheaf_from_payload(graph, *payload);
  BmpResult res = bmp_sheaf(graph, w, bound);
  cache_store(cfg, key, sheaf_payload(res.sheaf, label, J, word, bound));
  return std::move(res.sheaf);
}

}  // namespace mg
