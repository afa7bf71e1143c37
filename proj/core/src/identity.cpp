#include "repomine/identity.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <set>

#include "repomine/error.hpp"
#include "repomine/parallel.hpp"
#include "repomine/union_find.hpp"

namespace repomine {

namespace {

std::string lower_ascii(std::string_view s) {
  std::string out(s);
  for (auto& ch : out) {
    if (ch >= 'A' && ch <= 'Z') ch = static_cast<char>(ch - 'A' + 'a');
  }
  return out;
}

const ValueSet& commits_of(const AuthorId& a, const BaseMaps& maps) {
  const ValueSet& commits = maps.values(MapName::a2c, a.raw());
  if (commits.empty()) throw Error(Errc::unknown_author, "author '" + a.raw() + "' has no commits");
  return commits;
}

std::set<std::string_view> touched_paths(const ValueSet& commits, const BaseMaps& maps) {
  std::set<std::string_view> out;
  for (const auto& c : commits) {
    for (const auto& p : maps.values(MapName::c2f, c)) out.insert(p);
  }
  return out;
}

double cosine(const HourHistogram& a, const HourHistogram& b) {
  double dot = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < 24; ++i) {
    dot += static_cast<double>(a[i]) * static_cast<double>(b[i]);
    na += static_cast<double>(a[i]) * static_cast<double>(a[i]);
    nb += static_cast<double>(b[i]) * static_cast<double>(b[i]);
  }
  if (na == 0 || nb == 0) return 0.0;
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), 0.0, 1.0);
}

double jaccard(const std::set<std::string_view>& a, const std::set<std::string_view>& b) {
  if (a.empty() && b.empty()) return 0.0;
  std::size_t common = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++common;
      ++i;
      ++j;
    }
  }
  return static_cast<double>(common) / static_cast<double>(a.size() + b.size() - common);
}

std::vector<std::string> name_tokens(const std::string& name) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos < name.size()) {
    auto sp = name.find(' ', pos);
    if (sp == std::string::npos) sp = name.size();
    if (sp > pos) out.push_back(name.substr(pos, sp - pos));
    pos = sp + 1;
  }
  return out;
}

struct Profile {
  AuthorId id;
  NormalizedAuthor norm;
  HourHistogram hours{};
  std::set<std::string_view> paths;
};

Profile make_profile(const AuthorId& a, const BaseMaps& maps, const ObjectStore& store) {
  const ValueSet& commits = commits_of(a, maps);
  return {a, normalize_author(a), hour_histogram(a, maps, store), touched_paths(commits, maps)};
}

double name_similarity(const std::string& a, const std::string& b) {
  if (a.empty() && b.empty()) return 1.0;
  double longest = static_cast<double>(std::max(a.size(), b.size()));
  return 1.0 - static_cast<double>(levenshtein(a, b)) / longest;
}

IdentityFeatures features(const Profile& a, const Profile& b) {
  IdentityFeatures f;
  f.names_present = !a.norm.name.empty() && !b.norm.name.empty();
  f.name_sim = name_similarity(a.norm.name, b.norm.name);
  f.email_local_match = (!a.norm.local.empty() && a.norm.local == b.norm.local) ? 1.0 : 0.0;
  f.hour_sim = cosine(a.hours, b.hours);
  f.file_overlap = jaccard(a.paths, b.paths);
  return f;
}

double profile_similarity(const Profile& a, const Profile& b, const IdentityWeights& w) {
  if (a.id == b.id) return 1.0;
  return score(features(a, b), w);
}

}  // namespace

NormalizedAuthor normalize_author(const AuthorId& author) {
  NormalizedAuthor out;
  bool pending_space = false;
  for (unsigned char ch : author.name()) {
    if (std::isspace(ch) || std::ispunct(ch)) {
      pending_space = !out.name.empty();
      continue;
    }
    if (pending_space) out.name += ' ';
    pending_space = false;
    out.name += static_cast<char>(ch >= 'A' && ch <= 'Z' ? ch - 'A' + 'a' : ch);
  }
  out.email = lower_ascii(author.email());
  auto at = out.email.find('@');
  if (at != std::string::npos) out.local = out.email.substr(0, at);
  return out;
}

HourHistogram hour_histogram(const AuthorId& author, const BaseMaps& maps,
                             const ObjectStore& store) {
  HourHistogram h{};
  for (const auto& c : commits_of(author, maps)) {
    std::int64_t ts = store.commit(ObjectId(c)).commit_ts;
    ++h[static_cast<std::size_t>((ts / 3600) % 24)];
  }
  return h;
}

std::size_t levenshtein(std::string_view a, std::string_view b) {
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

void IdentityWeights::check() const {
  if (name < 0 || email_local < 0 || hours < 0 || files < 0) {
    throw Error(Errc::invalid_argument, "identity weights must be non-negative");
  }
  if (std::abs(name + email_local + hours + files - 1.0) > 1e-9) {
    throw Error(Errc::invalid_argument, "identity weights must sum to 1");
  }
}

IdentityFeatures identity_features(const AuthorId& a, const AuthorId& b, const BaseMaps& maps,
                                   const ObjectStore& store) {
  return features(make_profile(a, maps, store), make_profile(b, maps, store));
}

double score(const IdentityFeatures& f, const IdentityWeights& w) {
  if (!f.names_present) {
    double share = w.name / 3.0;
    return (w.email_local + share) * f.email_local_match + (w.hours + share) * f.hour_sim +
           (w.files + share) * f.file_overlap;
  }
  return w.name * f.name_sim + w.email_local * f.email_local_match + w.hours * f.hour_sim +
         w.files * f.file_overlap;
}

double similarity(const AuthorId& a, const AuthorId& b, const BaseMaps& maps,
                  const ObjectStore& store, const IdentityWeights& w) {
  return profile_similarity(make_profile(a, maps, store), make_profile(b, maps, store), w);
}

IdentityPartition merge(const std::vector<AuthorId>& authors, double theta, const BaseMaps& maps,
                        const ObjectStore& store, const IdentityWeights& w, unsigned threads) {
  if (!(theta > 0.0 && theta <= 1.0)) throw Error(Errc::invalid_argument, "theta must be in (0, 1]");
  w.check();

  std::vector<AuthorId> ids(authors);
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

  std::vector<Profile> profiles(ids.size());
  parallel_for(ids.size(), threads,
               [&](std::size_t i) { profiles[i] = make_profile(ids[i], maps, store); });

  std::map<std::string, std::vector<std::size_t>, std::less<>> blocks;
  for (std::size_t i = 0; i < profiles.size(); ++i) {
    const Profile& p = profiles[i];
    for (auto& tok : name_tokens(p.norm.name)) blocks["n:" + tok].push_back(i);
    if (!p.norm.local.empty()) blocks["e:" + p.norm.local].push_back(i);
    for (auto path : p.paths) blocks["f:" + std::string(path)].push_back(i);
  }
  std::set<std::pair<std::size_t, std::size_t>> candidate_set;
  for (const auto& [_, members] : blocks) {
    for (std::size_t x = 0; x < members.size(); ++x) {
      for (std::size_t y = x + 1; y < members.size(); ++y) {
        candidate_set.emplace(members[x], members[y]);
      }
    }
  }
  std::vector<std::pair<std::size_t, std::size_t>> candidates(candidate_set.begin(),
                                                              candidate_set.end());
  std::vector<char> accept(candidates.size(), 0);
  parallel_for(candidates.size(), threads, [&](std::size_t k) {
    auto [i, j] = candidates[k];
    accept[k] = profile_similarity(profiles[i], profiles[j], w) >= theta;
  });

  UnionFind uf(profiles.size());
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    if (accept[k]) uf.unite(candidates[k].first, candidates[k].second);
  }

  std::map<std::size_t, std::vector<std::string>> by_root;
  for (std::size_t i = 0; i < ids.size(); ++i) by_root[uf.find(i)].push_back(ids[i].raw());
  IdentityPartition out;
  for (auto& [_, g] : by_root) out.groups.push_back(std::move(g));
  std::sort(out.groups.begin(), out.groups.end());
  return out;
}

void write_identities(const std::filesystem::path& file, const IdentityPartition& partition) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::io, "cannot write " + file.string());
  for (const auto& g : partition.groups) {
    if (g.size() < 2) continue;
    out << g.front() << '\t';
    for (std::size_t i = 1; i < g.size(); ++i) out << (i > 1 ? ";" : "") << g[i];
    out << '\n';
  }
  if (!out.flush()) throw Error(Errc::io, "write failed for " + file.string());
}

}  // namespace repomine
