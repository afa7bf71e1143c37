#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "repomine/object_store.hpp"

namespace repomine {

struct RepositoryScan {
  // Everything reachable from the project's heads, plus the ProjectRef itself.
  ObjectStore delta;
  ProjectRef project;
  std::size_t skipped_gitlinks = 0;
};

// Loads a repository that stores its objects loose. `repo_root` may be a bare
// repository or a work tree containing `.git/`. Branch heads come from
// refs/heads/ and packed-refs; unreachable objects are never read.
// Packed objects are rejected with Errc::packfile_unsupported.
RepositoryScan scan_repository(const std::filesystem::path& repo_root,
                               const std::string& project_id);

struct RepositorySource {
  std::filesystem::path root;
  std::string project_id;
};

// Scans several repositories (concurrently when threads > 1) and merges the
// deltas in project_id order.
ObjectStore scan_repositories(std::vector<RepositorySource> sources, unsigned threads,
                              std::size_t* skipped_gitlinks = nullptr);

}  // namespace repomine
