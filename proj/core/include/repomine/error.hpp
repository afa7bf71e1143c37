#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace repomine {

enum class Errc {
  invalid_argument,
  io,
  // object parsing
  decompression,
  unknown_kind,
  size_mismatch,
  missing_tree,
  malformed_identity,
  bad_timestamp,
  truncated,
  missing_nul,
  // store construction
  syntax,
  dangling_reference,
  conflicting_duplicate,
  cycle,
  invariant,
  // repository scanning
  no_heads,
  packfile_unsupported,
  unreadable_object,
  not_a_commit,
  unresolved,
  // maps and shards
  unknown_map,
  missing_shard,
  malformed_shard,
  // metadata
  malformed_csv,
  negative_stars,
  malformed_document,
  // queries and lookups
  unknown_field,
  unknown_language,
  malformed_query,
  field_kind_mismatch,
  unknown_author,
  unknown_project,
};

std::string_view errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace repomine
