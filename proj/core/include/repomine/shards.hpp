#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "repomine/basemaps.hpp"

namespace repomine {

struct ShardSet {
  std::string map_name;
  std::size_t shard_count = 0;
  std::vector<std::filesystem::path> files;
};

// Shard a key lands in: fnv1a64(key) mod shard_count.
std::size_t shard_index(std::string_view key, std::size_t shard_count) noexcept;

bool is_valid_shard_count(std::size_t shard_count) noexcept;

// Shard line values are `;`-separated; `;` and `\` inside a value are
// backslash-escaped.
std::string escape_value(std::string_view value);

// Writes `<out_dir>/<map>.<i>.kv` for every map and records map names,
// shard_count and the version letter in `<out_dir>/MANIFEST`. Output bytes
// depend only on the maps and shard_count.
std::vector<ShardSet> write_shards(const BaseMaps& maps, const std::filesystem::path& out_dir,
                                   std::size_t shard_count, char version = 'A');

// Reads one map back. shard_count comes from the directory's MANIFEST.
KeyValues read_shards(const std::filesystem::path& dir, std::string_view map_name);
BaseMaps read_all_shards(const std::filesystem::path& dir);

}  // namespace repomine
