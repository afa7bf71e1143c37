#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "repomine/basemaps.hpp"
#include "repomine/langclass.hpp"
#include "repomine/metadata.hpp"
#include "repomine/object_store.hpp"
#include "repomine/query.hpp"

namespace repomine {

// splitmix64, pinned so published samples replicate in any language.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

struct SampleSpec {
  std::size_t n = 1;
  std::uint64_t seed = 0;
};

// Fisher-Yates over `matched` (which must be sorted and duplicate-free),
// swapping i with next() % (i + 1) from the back, then the first n.
std::vector<std::string> sample(std::span<const std::string> matched, const SampleSpec& spec);

struct DeepLocFilter {
  Language language = Language::Python;
  std::uint64_t min_lines = 1;
  std::uint64_t min_files = 1;
};

// True when at least min_files distinct paths of `language` in the project
// had some version introduced by the project with >= min_lines lines.
// Binary blobs never qualify.
bool deep_loc_filter(const std::string& project_id, const DeepLocFilter& filter,
                     const BaseMaps& maps, const ObjectStore& store,
                     const ExtensionTable& table = ExtensionTable::defaults());

struct QueryResult {
  std::vector<std::string> matched;  // sorted
  std::vector<std::string> sampled;
  bool shortfall = false;

  friend bool operator==(const QueryResult&, const QueryResult&) = default;
};

// Evaluates the predicate (and the deep LOC filter, when given) over project
// documents, then samples. Deep filtering needs maps and store.
QueryResult run_project_query(const std::vector<ProjMetadata>& docs, const Predicate& predicate,
                              const SampleSpec& spec,
                              const std::optional<DeepLocFilter>& deep = std::nullopt,
                              const BaseMaps* maps = nullptr, const ObjectStore* store = nullptr,
                              const ExtensionTable& table = ExtensionTable::defaults());

QueryResult run_author_query(const std::vector<AuthMetadata>& docs, const Predicate& predicate,
                             const SampleSpec& spec);

// One JSON object: query, n, seed, matched, sampled, shortfall.
std::string result_document(const QueryResult& result, const Predicate& predicate,
                            const SampleSpec& spec);

// Proleptic Gregorian UTC year of an epoch timestamp.
int utc_year(std::int64_t ts) noexcept;

struct LangTrendRow {
  int year = 0;
  Language language = Language::Ada;
  std::uint64_t commits = 0;

  friend bool operator==(const LangTrendRow&, const LangTrendRow&) = default;
};

// Commits per (year, language) that introduce at least one path of that
// language. Sorted by year, then language name.
std::vector<LangTrendRow> lang_trend(const BaseMaps& maps, const ObjectStore& store,
                                     const ExtensionTable& table = ExtensionTable::defaults());

// `year,language,commits` with a header line.
void write_lang_trend_csv(std::ostream& out, const std::vector<LangTrendRow>& rows);

// Distinct blobs introduced at each path by the project's commits.
std::map<std::string, std::uint64_t> file_change_counts(const std::string& project_id,
                                                        const BaseMaps& maps);

}  // namespace repomine
