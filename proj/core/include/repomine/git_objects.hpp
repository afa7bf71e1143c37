#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "repomine/object_store.hpp"

namespace repomine {

enum class ObjectKind { commit, tree, blob };

std::string_view object_kind_name(ObjectKind kind) noexcept;

struct LooseObject {
  ObjectKind kind;
  std::string payload;
};

// Inflates a zlib stream and splits the `<kind> <size>\0` header off.
LooseObject parse_loose_object(std::string_view compressed);

// zlib helpers. deflate_bytes is what git itself writes for loose objects.
std::string inflate_bytes(std::string_view compressed);
std::string deflate_bytes(std::string_view raw);

// Parses git's textual commit format. Timezone offsets are validated and
// dropped; timestamps stay as UTC epoch seconds.
CommitRecord parse_commit(const ObjectId& id, std::string_view payload);

struct ParsedTree {
  std::vector<TreeEntry> entries;
  // Submodule (mode 160000) entries are not represented in the store.
  std::size_t skipped_gitlinks = 0;
};

// Parses git's binary tree format: repeated `<mode> <name>\0<20 raw bytes>`.
ParsedTree parse_tree(std::string_view payload);
std::string serialize_tree(const std::vector<TreeEntry>& entries);

// Binary iff a NUL byte appears in the first 8000 bytes. Lines are LF count
// plus one for an unterminated final line.
BlobStats blob_stats(const ObjectId& id, std::string_view payload);

}  // namespace repomine
