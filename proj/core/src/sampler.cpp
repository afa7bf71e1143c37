#include "repomine/sampler.hpp"

#include <algorithm>
#include <functional>
#include <ostream>
#include <set>

#include <json.hpp>

#include "repomine/error.hpp"

namespace repomine {

namespace {

const ValueSet& project_commits(const std::string& project_id, const BaseMaps& maps) {
  const ValueSet& commits = maps.values(MapName::p2c, project_id);
  if (commits.empty()) throw Error(Errc::unknown_project, "project '" + project_id + "' not in maps");
  return commits;
}

template <class Docs, class IdOf>
QueryResult finish(const Docs& docs, const Predicate& predicate, const SampleSpec& spec,
                   IdOf id_of, const std::function<bool(const std::string&)>& extra) {
  QueryResult r;
  for (const auto& d : docs) {
    if (eval(predicate, d) && (!extra || extra(id_of(d)))) r.matched.push_back(id_of(d));
  }
  std::sort(r.matched.begin(), r.matched.end());
  r.matched.erase(std::unique(r.matched.begin(), r.matched.end()), r.matched.end());
  r.sampled = sample(r.matched, spec);
  r.shortfall = r.matched.size() < spec.n;
  return r;
}

}  // namespace

std::vector<std::string> sample(std::span<const std::string> matched, const SampleSpec& spec) {
  if (spec.n < 1) throw Error(Errc::invalid_argument, "sample size must be at least 1");
  for (std::size_t i = 1; i < matched.size(); ++i) {
    if (!(matched[i - 1] < matched[i])) {
      throw Error(Errc::invalid_argument, "matched ids must be sorted and unique");
    }
  }
  std::vector<std::string> items(matched.begin(), matched.end());
  SplitMix64 rng(spec.seed);
  for (std::size_t i = items.size(); i-- > 1;) {
    std::size_t j = static_cast<std::size_t>(rng.next() % (static_cast<std::uint64_t>(i) + 1));
    std::swap(items[i], items[j]);
  }
  items.resize(std::min(spec.n, items.size()));
  return items;
}

bool deep_loc_filter(const std::string& project_id, const DeepLocFilter& filter,
                     const BaseMaps& maps, const ObjectStore& store, const ExtensionTable& table) {
  if (filter.min_lines < 1 || filter.min_files < 1) {
    throw Error(Errc::invalid_argument, "deep LOC thresholds must be at least 1");
  }
  std::map<std::string, std::uint64_t> max_lines;
  for (const auto& c : project_commits(project_id, maps)) {
    for (const auto& encoded : maps.values(MapName::c2fb, c)) {
      auto [path, blob] = decode_blob_path(encoded);
      if (table.classify(path) != filter.language) continue;
      const BlobStats& stats = store.blob(blob);
      std::uint64_t lines = stats.is_binary ? 0 : stats.line_count;
      auto& best = max_lines[path];
      best = std::max(best, lines);
    }
  }
  std::uint64_t qualifying = 0;
  for (const auto& [_, lines] : max_lines) {
    if (lines >= filter.min_lines) ++qualifying;
  }
  return qualifying >= filter.min_files;
}

QueryResult run_project_query(const std::vector<ProjMetadata>& docs, const Predicate& predicate,
                              const SampleSpec& spec, const std::optional<DeepLocFilter>& deep,
                              const BaseMaps* maps, const ObjectStore* store,
                              const ExtensionTable& table) {
  std::function<bool(const std::string&)> extra;
  if (deep) {
    if (!maps || !store) {
      throw Error(Errc::invalid_argument, "deep LOC filtering needs base maps and an object store");
    }
    extra = [&](const std::string& id) { return deep_loc_filter(id, *deep, *maps, *store, table); };
  }
  return finish(docs, predicate, spec, [](const ProjMetadata& d) { return d.project_id; }, extra);
}

QueryResult run_author_query(const std::vector<AuthMetadata>& docs, const Predicate& predicate,
                             const SampleSpec& spec) {
  return finish(docs, predicate, spec, [](const AuthMetadata& d) { return d.author_id; }, {});
}

std::string result_document(const QueryResult& r, const Predicate& predicate,
                            const SampleSpec& spec) {
  nlohmann::ordered_json j;
  j["query"] = to_string(predicate);
  j["n"] = spec.n;
  j["seed"] = spec.seed;
  j["matched"] = r.matched;
  j["sampled"] = r.sampled;
  j["shortfall"] = r.shortfall;
  return j.dump();
}

int utc_year(std::int64_t ts) noexcept {
  std::int64_t days = ts / 86400 - (ts % 86400 < 0 ? 1 : 0);
  std::int64_t z = days + 719468;
  std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  std::int64_t doe = z - era * 146097;
  std::int64_t yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  std::int64_t doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  std::int64_t mp = (5 * doy + 2) / 153;
  std::int64_t month = mp < 10 ? mp + 3 : mp - 9;
  return static_cast<int>(yoe + era * 400 + (month <= 2 ? 1 : 0));
}

std::vector<LangTrendRow> lang_trend(const BaseMaps& maps, const ObjectStore& store,
                                     const ExtensionTable& table) {
  std::map<std::pair<int, std::string_view>, std::pair<Language, std::uint64_t>> counts;
  for (const auto& [commit, paths] : maps.map(MapName::c2f)) {
    std::set<Language> langs;
    for (const auto& p : paths) {
      if (auto lang = table.classify(p)) langs.insert(*lang);
    }
    if (langs.empty()) continue;
    int year = utc_year(store.commit(ObjectId(commit)).commit_ts);
    for (Language l : langs) {
      auto& slot = counts[{year, language_name(l)}];
      slot.first = l;
      ++slot.second;
    }
  }
  std::vector<LangTrendRow> rows;
  rows.reserve(counts.size());
  for (const auto& [key, value] : counts) rows.push_back({key.first, value.first, value.second});
  return rows;
}

void write_lang_trend_csv(std::ostream& out, const std::vector<LangTrendRow>& rows) {
  out << "year,language,commits\n";
  for (const auto& r : rows) out << r.year << ',' << language_name(r.language) << ',' << r.commits << '\n';
}

std::map<std::string, std::uint64_t> file_change_counts(const std::string& project_id,
                                                        const BaseMaps& maps) {
  std::map<std::string, std::set<ObjectId>> blobs_at;
  for (const auto& c : project_commits(project_id, maps)) {
    for (const auto& encoded : maps.values(MapName::c2fb, c)) {
      auto [path, blob] = decode_blob_path(encoded);
      blobs_at[std::move(path)].insert(blob);
    }
  }
  std::map<std::string, std::uint64_t> out;
  for (auto& [path, blobs] : blobs_at) out.emplace(path, blobs.size());
  return out;
}

}  // namespace repomine
