#include "repomine/metadata.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <limits>
#include <set>

#include <json.hpp>

#include "repomine/error.hpp"
#include "repomine/parallel.hpp"

namespace repomine {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

struct Range {
  std::int64_t first = std::numeric_limits<std::int64_t>::max();
  std::int64_t last = std::numeric_limits<std::int64_t>::min();

  void add(std::int64_t ts) {
    first = std::min(first, ts);
    last = std::max(last, ts);
  }
};

LangCounts count_languages(const std::set<std::string_view>& paths, const ExtensionTable& table) {
  LangCounts out;
  for (auto p : paths) {
    if (auto lang = table.classify(p)) ++out[*lang];
  }
  return out;
}

ordered_json lang_json(const LangCounts& counts) {
  ordered_json j = ordered_json::object();
  for (const auto& [lang, n] : counts) j[std::string(language_name(lang))] = n;
  return j;
}

[[noreturn]] void bad_document(const std::string& why) {
  throw Error(Errc::malformed_document, why);
}

template <class T>
T field(const ordered_json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) bad_document(std::string("missing key '") + key + "'");
  try {
    if constexpr (std::is_unsigned_v<T>) {
      if (!it->is_number_unsigned()) bad_document(std::string("'") + key + "' is not unsigned");
    } else if constexpr (std::is_integral_v<T>) {
      if (!it->is_number_integer()) bad_document(std::string("'") + key + "' is not an integer");
    }
    return it->get<T>();
  } catch (const nlohmann::json::exception& e) {
    bad_document(std::string("'") + key + "': " + e.what());
  }
}

LangCounts lang_from_json(const ordered_json& j) {
  auto it = j.find("lang_counts");
  if (it == j.end() || !it->is_object()) bad_document("missing lang_counts object");
  LangCounts out;
  for (const auto& [name, value] : it->items()) {
    auto lang = language_from_name(name);
    if (!lang) bad_document("unknown language '" + name + "'");
    if (!value.is_number_unsigned()) bad_document("lang count for " + name + " is not unsigned");
    out[*lang] = value.get<std::uint64_t>();
  }
  return out;
}

ordered_json parse_line(std::string_view line) {
  try {
    auto j = ordered_json::parse(line.begin(), line.end());
    if (!j.is_object()) bad_document("document is not an object");
    return j;
  } catch (const nlohmann::json::parse_error& e) {
    bad_document(e.what());
  }
}

template <class Doc, class Key>
fs::path write_collection(std::vector<Doc>& docs, Key key, Collection c, DatasetVersion v,
                          const fs::path& out_dir) {
  std::sort(docs.begin(), docs.end(), [&](const Doc& a, const Doc& b) { return key(a) < key(b); });
  for (const auto& d : docs) validate_document(d);
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  fs::path file = out_dir / (std::string(collection_name(c)) + "." + v.letter() + ".jsonl");
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::io, "cannot write " + file.string());
  for (const auto& d : docs) out << to_json_line(d) << '\n';
  if (!out.flush()) throw Error(Errc::io, "write failed for " + file.string());
  return file;
}

template <class Doc, class Parse>
std::vector<Doc> read_collection(const fs::path& file, Parse parse) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error(Errc::io, "cannot open " + file.string());
  std::vector<Doc> docs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      docs.push_back(parse(line));
    } catch (const Error& e) {
      throw Error(Errc::malformed_document,
                  file.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return docs;
}

}  // namespace

DatasetVersion::DatasetVersion(char letter) : letter_(letter) {
  if (letter < 'A' || letter > 'Z') {
    throw Error(Errc::invalid_argument,
                std::string("dataset version must be one uppercase letter, got '") + letter + "'");
  }
}

DatasetVersion DatasetVersion::parse(std::string_view text) {
  if (text.size() != 1) {
    throw Error(Errc::invalid_argument,
                "dataset version must be one uppercase letter, got '" + std::string(text) + "'");
  }
  return DatasetVersion(text[0]);
}

std::string_view collection_name(Collection c) noexcept {
  return c == Collection::proj_metadata ? "proj_metadata" : "auth_metadata";
}

void validate_document(const ProjMetadata& d) {
  auto fail = [&](const std::string& why) {
    throw Error(Errc::invariant, "project '" + d.project_id + "': " + why);
  };
  if (d.project_id.empty()) fail("empty project_id");
  if (d.n_commits < 1) fail("no commits");
  if (d.first_ts > d.last_ts) fail("first_ts after last_ts");
  std::uint64_t total = 0;
  for (const auto& [_, n] : d.lang_counts) total += n;
  if (total > d.n_files) fail("language counts exceed n_files");
  if (d.fork_of && *d.fork_of == d.project_id) fail("project is a fork of itself");
}

void validate_document(const AuthMetadata& d) {
  auto fail = [&](const std::string& why) {
    throw Error(Errc::invariant, "author '" + d.author_id + "': " + why);
  };
  if (!AuthorId::is_valid(d.author_id)) fail("malformed author id");
  if (d.n_commits < 1) fail("no commits");
  if (d.first_ts > d.last_ts) fail("first_ts after last_ts");
}

std::vector<ProjMetadata> aggregate_projects(const BaseMaps& maps, const ObjectStore& store,
                                             const ExtensionTable& table, unsigned threads) {
  const auto& projects = store.projects();
  std::vector<ProjMetadata> docs(projects.size());
  parallel_for(projects.size(), threads, [&](std::size_t i) {
    ProjMetadata& d = docs[i];
    d.project_id = projects[i].project_id;
    const ValueSet& commits = maps.values(MapName::p2c, d.project_id);

    std::set<std::string_view> authors;
    std::set<std::string_view> paths;
    Range range;
    for (const auto& c : commits) {
      for (const auto& a : maps.values(MapName::c2a, c)) authors.insert(a);
      for (const auto& p : maps.values(MapName::c2f, c)) paths.insert(p);
      range.add(store.commit(ObjectId(c)).commit_ts);
    }
    d.n_authors = authors.size();
    d.n_commits = commits.size();
    d.n_files = paths.size();
    d.first_ts = range.first;
    d.last_ts = range.last;
    d.lang_counts = count_languages(paths, table);
  });
  return docs;
}

std::vector<AuthMetadata> aggregate_authors(const BaseMaps& maps, const ObjectStore& store,
                                            const ExtensionTable& table, unsigned threads) {
  std::vector<const std::pair<const std::string, ValueSet>*> authors;
  for (const auto& entry : maps.map(MapName::a2c)) authors.push_back(&entry);

  std::vector<AuthMetadata> docs(authors.size());
  parallel_for(authors.size(), threads, [&](std::size_t i) {
    const auto& [author, commits] = *authors[i];
    AuthMetadata& d = docs[i];
    d.author_id = author;

    std::set<std::string_view> blobs;
    std::set<std::string_view> paths;
    Range range;
    for (const auto& c : commits) {
      for (const auto& b : maps.values(MapName::c2b, c)) blobs.insert(b);
      for (const auto& p : maps.values(MapName::c2f, c)) paths.insert(p);
      range.add(store.commit(ObjectId(c)).commit_ts);
    }
    d.n_commits = commits.size();
    d.n_blobs = blobs.size();
    d.n_files = paths.size();
    d.n_projects = maps.values(MapName::a2p, author).size();
    d.first_ts = range.first;
    d.last_ts = range.last;
    d.lang_counts = count_languages(paths, table);
  });
  return docs;
}

std::string to_json_line(const ProjMetadata& d) {
  ordered_json j;
  j["project_id"] = d.project_id;
  j["n_authors"] = d.n_authors;
  j["n_commits"] = d.n_commits;
  j["n_files"] = d.n_files;
  j["first_ts"] = d.first_ts;
  j["last_ts"] = d.last_ts;
  j["lang_counts"] = lang_json(d.lang_counts);
  if (d.fork_of) j["fork_of"] = *d.fork_of;
  if (d.stars) j["stars"] = *d.stars;
  return j.dump();
}

std::string to_json_line(const AuthMetadata& d) {
  ordered_json j;
  j["author_id"] = d.author_id;
  j["n_commits"] = d.n_commits;
  j["n_blobs"] = d.n_blobs;
  j["n_files"] = d.n_files;
  j["n_projects"] = d.n_projects;
  j["first_ts"] = d.first_ts;
  j["last_ts"] = d.last_ts;
  j["lang_counts"] = lang_json(d.lang_counts);
  return j.dump();
}

ProjMetadata proj_from_json(std::string_view line) {
  auto j = parse_line(line);
  ProjMetadata d;
  d.project_id = field<std::string>(j, "project_id");
  d.n_authors = field<std::uint64_t>(j, "n_authors");
  d.n_commits = field<std::uint64_t>(j, "n_commits");
  d.n_files = field<std::uint64_t>(j, "n_files");
  d.first_ts = field<std::int64_t>(j, "first_ts");
  d.last_ts = field<std::int64_t>(j, "last_ts");
  d.lang_counts = lang_from_json(j);
  if (j.contains("fork_of")) d.fork_of = field<std::string>(j, "fork_of");
  if (j.contains("stars")) d.stars = field<std::uint64_t>(j, "stars");
  validate_document(d);
  return d;
}

AuthMetadata auth_from_json(std::string_view line) {
  auto j = parse_line(line);
  AuthMetadata d;
  d.author_id = field<std::string>(j, "author_id");
  d.n_commits = field<std::uint64_t>(j, "n_commits");
  d.n_blobs = field<std::uint64_t>(j, "n_blobs");
  d.n_files = field<std::uint64_t>(j, "n_files");
  d.n_projects = field<std::uint64_t>(j, "n_projects");
  d.first_ts = field<std::int64_t>(j, "first_ts");
  d.last_ts = field<std::int64_t>(j, "last_ts");
  d.lang_counts = lang_from_json(j);
  validate_document(d);
  return d;
}

fs::path export_documents(std::vector<ProjMetadata> docs, DatasetVersion version,
                          const fs::path& out_dir) {
  return write_collection(docs, [](const ProjMetadata& d) -> const std::string& { return d.project_id; },
                          Collection::proj_metadata, version, out_dir);
}

fs::path export_documents(std::vector<AuthMetadata> docs, DatasetVersion version,
                          const fs::path& out_dir) {
  return write_collection(docs, [](const AuthMetadata& d) -> const std::string& { return d.author_id; },
                          Collection::auth_metadata, version, out_dir);
}

std::vector<ProjMetadata> read_proj_documents(const fs::path& file) {
  return read_collection<ProjMetadata>(file, proj_from_json);
}

std::vector<AuthMetadata> read_auth_documents(const fs::path& file) {
  return read_collection<AuthMetadata>(file, auth_from_json);
}

StarsReport import_stars(std::istream& csv, std::vector<ProjMetadata>& docs) {
  std::map<std::string_view, ProjMetadata*> by_id;
  for (auto& d : docs) by_id.emplace(d.project_id, &d);

  StarsReport report;
  std::string line;
  std::size_t row = 0;
  while (std::getline(csv, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto comma = line.rfind(',');
    if (comma == std::string::npos || comma == 0) {
      throw Error(Errc::malformed_csv, "stars row " + std::to_string(row) + ": expected project_id,stars");
    }
    std::string_view id = std::string_view(line).substr(0, comma);
    std::string_view stars_text = std::string_view(line).substr(comma + 1);
    if (!stars_text.empty() && stars_text.front() == '-') {
      throw Error(Errc::negative_stars, "stars row " + std::to_string(row) + ": '" +
                                            std::string(stars_text) + "'");
    }
    std::uint64_t stars = 0;
    auto [ptr, ec] = std::from_chars(stars_text.data(), stars_text.data() + stars_text.size(), stars);
    if (stars_text.empty() || ec != std::errc() || ptr != stars_text.data() + stars_text.size()) {
      if (row == 1) continue;  // header
      throw Error(Errc::malformed_csv, "stars row " + std::to_string(row) + ": bad count '" +
                                           std::string(stars_text) + "'");
    }
    auto it = by_id.find(id);
    if (it == by_id.end()) {
      ++report.unmatched;
      continue;
    }
    it->second->stars = stars;
    ++report.applied;
  }
  return report;
}

}  // namespace repomine
