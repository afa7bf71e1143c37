#include "repomine/forkcluster.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <utility>

#include "repomine/error.hpp"
#include "repomine/union_find.hpp"

namespace repomine {

std::vector<std::string> eligible_commits(const BaseMaps& maps, std::size_t k_max) {
  if (k_max < 2) throw Error(Errc::invalid_argument, "k_max must be at least 2");
  std::vector<std::string> out;
  for (const auto& [commit, projects] : maps.map(MapName::c2p)) {
    if (projects.size() >= 2 && projects.size() <= k_max) out.push_back(commit);
  }
  return out;
}

std::vector<ForkEdge> shared_commit_graph(const BaseMaps& maps, std::size_t k_max) {
  std::map<std::pair<std::string_view, std::string_view>, std::uint64_t> shared;
  for (const auto& commit : eligible_commits(maps, k_max)) {
    const ValueSet& projects = maps.values(MapName::c2p, commit);
    for (auto i = projects.begin(); i != projects.end(); ++i) {
      for (auto j = std::next(i); j != projects.end(); ++j) ++shared[{*i, *j}];
    }
  }

  std::vector<ForkEdge> edges;
  edges.reserve(shared.size());
  for (const auto& [pair, n] : shared) {
    std::uint64_t min_commits = std::min(maps.values(MapName::p2c, pair.first).size(),
                                         maps.values(MapName::p2c, pair.second).size());
    edges.push_back(ForkEdge{std::string(pair.first), std::string(pair.second), n, min_commits,
                             static_cast<double>(n) / static_cast<double>(min_commits)});
  }
  return edges;
}

std::vector<ForkCluster> cluster(const std::vector<ForkEdge>& edges, double tau) {
  if (!(tau > 0.0 && tau <= 1.0)) throw Error(Errc::invalid_argument, "tau must be in (0, 1]");

  std::map<std::string, std::size_t> index;
  for (const auto& e : edges) {
    index.emplace(e.a, 0);
    index.emplace(e.b, 0);
  }
  std::vector<const std::string*> names;
  for (auto& [name, i] : index) {
    i = names.size();
    names.push_back(&name);
  }

  UnionFind uf(names.size());
  for (const auto& e : edges) {
    if (e.overlap >= tau) uf.unite(index.at(e.a), index.at(e.b));
  }

  std::map<std::size_t, ForkCluster> by_root;
  for (std::size_t i = 0; i < names.size(); ++i) by_root[uf.find(i)].members.push_back(*names[i]);

  std::vector<ForkCluster> out;
  for (auto& [_, c] : by_root) {
    if (c.members.size() >= 2) out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(),
            [](const ForkCluster& x, const ForkCluster& y) { return x.members < y.members; });
  return out;
}

std::string elect_original(const ForkCluster& cluster, const BaseMaps& maps,
                           const ObjectStore& store) {
  if (cluster.members.size() < 2) {
    throw Error(Errc::invalid_argument, "a fork cluster needs at least two members");
  }
  const std::string* best_commit = nullptr;
  std::int64_t best_ts = 0;
  for (const auto& member : cluster.members) {
    for (const auto& c : maps.values(MapName::p2c, member)) {
      std::int64_t ts = store.commit(ObjectId(c)).commit_ts;
      if (!best_commit || ts < best_ts || (ts == best_ts && c < *best_commit)) {
        best_commit = &c;
        best_ts = ts;
      }
    }
  }
  if (!best_commit) throw Error(Errc::unknown_project, "fork cluster members have no commits");

  const std::string* original = nullptr;
  for (const auto& member : cluster.members) {
    if (maps.values(MapName::p2c, member).count(*best_commit) &&
        (!original || member < *original)) {
      original = &member;
    }
  }
  return *original;
}

std::vector<ForkCluster> detect_forks(const BaseMaps& maps, const ObjectStore& store,
                                      const ForkParams& params) {
  auto clusters = cluster(shared_commit_graph(maps, params.k_max), params.tau);
  for (auto& c : clusters) c.original = elect_original(c, maps, store);
  return clusters;
}

void apply_forks(const std::vector<ForkCluster>& clusters, std::vector<ProjMetadata>& docs) {
  std::map<std::string_view, const std::string*> origin;
  for (const auto& c : clusters) {
    for (const auto& m : c.members) {
      if (m != c.original) origin[m] = &c.original;
    }
  }
  for (auto& d : docs) {
    auto it = origin.find(d.project_id);
    if (it != origin.end()) d.fork_of = *it->second;
  }
}

void write_fork_clusters(const std::filesystem::path& file, std::vector<ForkCluster> clusters) {
  std::sort(clusters.begin(), clusters.end(),
            [](const ForkCluster& a, const ForkCluster& b) { return a.original < b.original; });
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::io, "cannot write " + file.string());
  for (const auto& c : clusters) {
    out << c.original << '\t';
    bool first = true;
    for (const auto& m : c.members) {
      if (m == c.original) continue;
      out << (first ? "" : ";") << m;
      first = false;
    }
    out << '\n';
  }
  if (!out.flush()) throw Error(Errc::io, "write failed for " + file.string());
}

}  // namespace repomine
