#include "galent/lattice_cache.hpp"

#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "galent/content_hash.hpp"
#include "galent/error.hpp"

namespace galent {
namespace {

using nlohmann::json;

json classes_json(const std::vector<Subgroup>& classes) {
  json arr = json::array();
  for (const Subgroup& h : classes) arr.push_back(h.members());
  return arr;
}

}  // namespace

const char* to_string(CacheOutcome outcome) {
  switch (outcome) {
    case CacheOutcome::kHit: return "hit";
    case CacheOutcome::kMiss: return "miss";
    case CacheOutcome::kInvalid: return "invalid";
  }
  return "?";
}

std::filesystem::path LatticeCache::default_directory() {
  if (const char* d = std::getenv(kCacheDirEnv); d && *d) return d;
  if (const char* x = std::getenv("XDG_CACHE_HOME"); x && *x) return std::filesystem::path(x) / "galent";
  if (const char* h = std::getenv("HOME"); h && *h) return std::filesystem::path(h) / ".cache" / "galent";
  return std::filesystem::temp_directory_path() / "galent-cache";
}

LatticeCache::LatticeCache(std::filesystem::path dir, EnumerationOptions options)
    : dir_(std::move(dir)), options_(options) {}

std::filesystem::path LatticeCache::entry_path(const FiniteGroup& g) const {
  return dir_ / ("lattice-v" + std::to_string(kCacheSchemaVersion) + "-" + group_content_hash(g) +
                 ".json");
}

std::optional<std::vector<Subgroup>> LatticeCache::load(const GroupPtr& g,
                                                        CacheOutcome* outcome) const {
  auto set = [&](CacheOutcome o) {
    if (outcome) *outcome = o;
  };
  const auto path = entry_path(*g);
  std::ifstream in(path);
  if (!in) {
    set(CacheOutcome::kMiss);
    return std::nullopt;
  }
  try {
    const json j = json::parse(in);
    if (j.at("schema_version").get<int>() != kCacheSchemaVersion ||
        j.at("group_hash").get<std::string>() != group_content_hash(*g) ||
        j.at("order").get<std::size_t>() != g->order() ||
        j.at("classes_sha256").get<std::string>() != sha256_hex(j.at("classes").dump())) {
      set(CacheOutcome::kInvalid);
      return std::nullopt;
    }
    std::vector<Subgroup> out;
    for (const auto& members : j.at("classes")) {
      out.push_back(Subgroup::checked(g, members.get<std::vector<Elem>>()));
    }
    set(CacheOutcome::kHit);
    return out;
  } catch (const std::exception&) {
    set(CacheOutcome::kInvalid);
    return std::nullopt;
  }
}

void LatticeCache::store(const GroupPtr& g, const std::vector<Subgroup>& classes) const {
  json j;
  j["schema_version"] = kCacheSchemaVersion;
  j["group_hash"] = group_content_hash(*g);
  j["order"] = g->order();
  j["classes"] = classes_json(classes);
  j["classes_sha256"] = sha256_hex(j["classes"].dump());
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  const auto final_path = entry_path(*g);
  std::random_device rd;
  auto tmp = final_path;
  tmp += ".tmp" + std::to_string(rd());
  {
    std::ofstream out(tmp);
    if (!out) return;  // an unwritable cache only costs recomputation
    out << j.dump() << '\n';
    if (!out) {
      std::filesystem::remove(tmp, ec);
      return;
    }
  }
  std::filesystem::rename(tmp, final_path, ec);
  if (ec) std::filesystem::remove(tmp, ec);
}

std::vector<Subgroup> LatticeCache::classes(const GroupPtr& g) {
  CacheOutcome outcome;
  if (auto cached = load(g, &outcome)) {
    last_ = outcome;
    ++hits_;
    return std::move(*cached);
  }
  last_ = outcome;
  ++misses_;
  auto computed = enumerate_subgroups(g, Conjugacy::kUpToConjugacy, options_);
  store(g, computed);
  return computed;
}

SubgroupEnumerator LatticeCache::enumerator() {
  return [this](const GroupPtr& g) { return classes(g); };
}

}  // namespace galent
