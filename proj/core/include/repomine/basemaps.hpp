#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "repomine/object_store.hpp"

namespace repomine {

struct PathBlobPair {
  std::string path;
  ObjectId blob;

  friend auto operator<=>(const PathBlobPair&, const PathBlobPair&) = default;
};

// (path, blob) pairs in `commit`'s tree that no parent has at the same path.
// Subtrees whose id matches a parent's subtree at the same path are skipped.
std::set<PathBlobPair> introduced_files(const ObjectStore& store, const ObjectId& commit);

// The ten key-value maps, plus c2fb: commit -> introduced (blob, path) pairs
// encoded as "<blob>:<path>". c2fb keeps per-commit pairing that c2f and
// c2b alone lose, and is what per-path blob counts are computed from.
enum class MapName : std::uint8_t { c2a, a2c, p2c, c2p, c2f, f2c, c2b, b2c, f2b, a2p, c2fb };

inline constexpr std::size_t kMapCount = 11;
const std::array<MapName, kMapCount>& all_maps() noexcept;
std::string_view map_name(MapName m) noexcept;
// Throws Errc::unknown_map for anything that is not materialized.
MapName map_from_name(std::string_view name);

// Inverse pairs: (c2a,a2c) (p2c,c2p) (c2f,f2c) (c2b,b2c).
std::optional<MapName> inverse_of(MapName m) noexcept;

std::string encode_blob_path(const ObjectId& blob, std::string_view path);
PathBlobPair decode_blob_path(std::string_view value);

using ValueSet = std::set<std::string, std::less<>>;
using KeyValues = std::map<std::string, ValueSet, std::less<>>;

class BaseMaps {
 public:
  const KeyValues& map(MapName m) const noexcept { return maps_[static_cast<std::size_t>(m)]; }
  KeyValues& map(MapName m) noexcept { return maps_[static_cast<std::size_t>(m)]; }

  // Empty set when the key is absent. Never inserts.
  const ValueSet& values(MapName m, std::string_view key) const noexcept;

  // Sorted values for `key` in the map called `name`.
  std::vector<std::string> lookup(std::string_view name, std::string_view key) const;

  // Adds every pair from `other` (set union, so merge order is irrelevant).
  void merge(const BaseMaps& other);

  friend bool operator==(const BaseMaps&, const BaseMaps&) = default;

 private:
  std::array<KeyValues, kMapCount> maps_;
};

// Builds all maps from a validated store. `threads` parallelizes the
// per-commit tree diffs; the result does not depend on it.
BaseMaps build_basemaps(const ObjectStore& store, unsigned threads = 1);

}  // namespace repomine
