#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "repomine/basemaps.hpp"
#include "repomine/metadata.hpp"
#include "repomine/object_store.hpp"

namespace repomine {

struct ForkEdge {
  std::string a;  // a < b bytewise
  std::string b;
  std::uint64_t shared = 0;
  // min(|p2c(a)|, |p2c(b)|); overlap = shared / min_commits.
  std::uint64_t min_commits = 0;
  double overlap = 0.0;

  friend bool operator==(const ForkEdge&, const ForkEdge&) = default;
};

struct ForkCluster {
  std::vector<std::string> members;  // sorted, at least two
  std::string original;              // empty until elected

  friend bool operator==(const ForkCluster&, const ForkCluster&) = default;
};

struct ForkParams {
  double tau = 0.5;
  std::size_t k_max = 100;
};

// Commits shared by between 2 and k_max projects. Commits in more projects
// than that look like vendored utility history rather than forks.
std::vector<std::string> eligible_commits(const BaseMaps& maps, std::size_t k_max);

// One edge per project pair sharing an eligible commit, sorted by (a, b).
std::vector<ForkEdge> shared_commit_graph(const BaseMaps& maps, std::size_t k_max);

// Connected components over edges with overlap >= tau; singletons dropped.
// Clusters are sorted by their first member.
std::vector<ForkCluster> cluster(const std::vector<ForkEdge>& edges, double tau);

// The member holding the earliest commit (by commit_ts, then commit id);
// when several members hold it, the bytewise-least project_id wins.
std::string elect_original(const ForkCluster& cluster, const BaseMaps& maps,
                           const ObjectStore& store);

// Full pass: edges, clustering and election.
std::vector<ForkCluster> detect_forks(const BaseMaps& maps, const ObjectStore& store,
                                      const ForkParams& params = {});

// Sets fork_of on every non-original member present in `docs`.
void apply_forks(const std::vector<ForkCluster>& clusters, std::vector<ProjMetadata>& docs);

// `original<TAB>member;member...` lines sorted by original; members exclude
// the original.
void write_fork_clusters(const std::filesystem::path& file, std::vector<ForkCluster> clusters);

}  // namespace repomine
