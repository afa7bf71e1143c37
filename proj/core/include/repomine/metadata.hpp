#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "repomine/basemaps.hpp"
#include "repomine/langclass.hpp"
#include "repomine/object_store.hpp"

namespace repomine {

// Distinct-path counts per language; zero counts are never stored.
using LangCounts = std::map<Language, std::uint64_t>;

struct ProjMetadata {
  std::string project_id;
  std::uint64_t n_authors = 0;
  std::uint64_t n_commits = 0;
  std::uint64_t n_files = 0;
  std::int64_t first_ts = 0;
  std::int64_t last_ts = 0;
  LangCounts lang_counts;
  std::optional<std::string> fork_of;
  std::optional<std::uint64_t> stars;

  friend bool operator==(const ProjMetadata&, const ProjMetadata&) = default;
};

struct AuthMetadata {
  std::string author_id;
  std::uint64_t n_commits = 0;
  std::uint64_t n_blobs = 0;
  std::uint64_t n_files = 0;
  std::uint64_t n_projects = 0;
  std::int64_t first_ts = 0;
  std::int64_t last_ts = 0;
  LangCounts lang_counts;

  friend bool operator==(const AuthMetadata&, const AuthMetadata&) = default;
};

// Single uppercase letter labelling one complete build.
class DatasetVersion {
 public:
  explicit DatasetVersion(char letter = 'A');
  static DatasetVersion parse(std::string_view text);

  char letter() const noexcept { return letter_; }

 private:
  char letter_;
};

enum class Collection { proj_metadata, auth_metadata };
std::string_view collection_name(Collection c) noexcept;

// Throws Errc::invariant on violated document invariants.
void validate_document(const ProjMetadata& doc);
void validate_document(const AuthMetadata& doc);

// One document per project; sorted by project_id. Activity ranges use
// committer timestamps; n_files counts distinct introduced paths.
std::vector<ProjMetadata> aggregate_projects(const BaseMaps& maps, const ObjectStore& store,
                                             const ExtensionTable& table = ExtensionTable::defaults(),
                                             unsigned threads = 1);

// One document per raw author id appearing in c2a; sorted by author_id.
std::vector<AuthMetadata> aggregate_authors(const BaseMaps& maps, const ObjectStore& store,
                                            const ExtensionTable& table = ExtensionTable::defaults(),
                                            unsigned threads = 1);

std::string to_json_line(const ProjMetadata& doc);
std::string to_json_line(const AuthMetadata& doc);
ProjMetadata proj_from_json(std::string_view line);
AuthMetadata auth_from_json(std::string_view line);

// Writes `<out>/<collection>.<letter>.jsonl`, one document per line, sorted
// by id. Returns the path written.
std::filesystem::path export_documents(std::vector<ProjMetadata> docs, DatasetVersion version,
                                       const std::filesystem::path& out_dir);
std::filesystem::path export_documents(std::vector<AuthMetadata> docs, DatasetVersion version,
                                       const std::filesystem::path& out_dir);

std::vector<ProjMetadata> read_proj_documents(const std::filesystem::path& file);
std::vector<AuthMetadata> read_auth_documents(const std::filesystem::path& file);

struct StarsReport {
  std::size_t applied = 0;
  std::size_t unmatched = 0;
};

// Reads `project_id,stars` rows (optional header) and sets stars on matching
// documents. Rows for unknown projects are counted, not fatal.
StarsReport import_stars(std::istream& csv, std::vector<ProjMetadata>& docs);

}  // namespace repomine
