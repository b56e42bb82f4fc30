#pragma once

// On-disk cache of subgroup conjugacy-class representatives, keyed by the
// content hash of a group's canonical element list.

#include <filesystem>
#include <string>
#include <vector>

#include "galent/entangle.hpp"
#include "galent/finite_group.hpp"
#include "galent/group_engine.hpp"

namespace galent {

inline constexpr int kCacheSchemaVersion = 1;

// Name of the environment variable overriding the cache directory.
inline constexpr const char* kCacheDirEnv = "GALENT_CACHE_DIR";

enum class CacheOutcome {
  kHit,
  kMiss,     // no entry
  kInvalid,  // unreadable, version mismatch or hash mismatch; recomputed
};

const char* to_string(CacheOutcome outcome);

class LatticeCache {
 public:
  // $GALENT_CACHE_DIR, else $XDG_CACHE_HOME/galent, else ~/.cache/galent.
  static std::filesystem::path default_directory();

  explicit LatticeCache(std::filesystem::path dir = default_directory(),
                        EnumerationOptions options = {});

  // Conjugacy-class representatives of the subgroups of `g`, from disk when a
  // valid entry exists, else computed and written back atomically.
  std::vector<Subgroup> classes(const GroupPtr& g);

  // Read-only lookup; nullopt when the entry is missing or invalid.
  std::optional<std::vector<Subgroup>> load(const GroupPtr& g, CacheOutcome* outcome = nullptr) const;
  void store(const GroupPtr& g, const std::vector<Subgroup>& classes) const;

  std::filesystem::path entry_path(const FiniteGroup& g) const;
  const std::filesystem::path& directory() const { return dir_; }

  // Outcome of the most recent classes() call, and running counts.
  CacheOutcome last_outcome() const { return last_; }
  std::size_t hits() const { return hits_; }
  std::size_t misses() const { return misses_; }

  SubgroupEnumerator enumerator();

 private:
  std::filesystem::path dir_;
  EnumerationOptions options_;
  CacheOutcome last_ = CacheOutcome::kMiss;
  std::size_t hits_ = 0;
  std::size_t misses_ = 0;
};

}  // namespace galent
