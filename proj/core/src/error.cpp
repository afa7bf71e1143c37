#include "repomine/error.hpp"

namespace repomine {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_argument: return "invalid-argument";
    case Errc::io: return "io";
    case Errc::decompression: return "decompression";
    case Errc::unknown_kind: return "unknown-kind";
    case Errc::size_mismatch: return "size-mismatch";
    case Errc::missing_tree: return "missing-tree";
    case Errc::malformed_identity: return "malformed-identity";
    case Errc::bad_timestamp: return "bad-timestamp";
    case Errc::truncated: return "truncated";
    case Errc::missing_nul: return "missing-nul";
    case Errc::syntax: return "syntax";
    case Errc::dangling_reference: return "dangling-reference";
    case Errc::conflicting_duplicate: return "conflicting-duplicate";
    case Errc::cycle: return "cycle";
    case Errc::invariant: return "invariant";
    case Errc::no_heads: return "no-heads";
    case Errc::packfile_unsupported: return "packfile-unsupported";
    case Errc::unreadable_object: return "unreadable-object";
    case Errc::not_a_commit: return "not-a-commit";
    case Errc::unresolved: return "unresolved";
    case Errc::unknown_map: return "unknown-map";
    case Errc::missing_shard: return "missing-shard";
    case Errc::malformed_shard: return "malformed-shard";
    case Errc::malformed_csv: return "malformed-csv";
    case Errc::negative_stars: return "negative-stars";
    case Errc::malformed_document: return "malformed-document";
    case Errc::unknown_field: return "unknown-field";
    case Errc::unknown_language: return "unknown-language";
    case Errc::malformed_query: return "malformed-query";
    case Errc::field_kind_mismatch: return "field-kind-mismatch";
    case Errc::unknown_author: return "unknown-author";
    case Errc::unknown_project: return "unknown-project";
  }
  return "unknown";
}

}  // namespace repomine
