#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "repomine/ids.hpp"

namespace repomine {

struct CommitRecord {
  ObjectId id;
  ObjectId tree;
  std::vector<ObjectId> parents;
  AuthorId author;
  std::int64_t author_ts = 0;
  AuthorId committer;
  std::int64_t commit_ts = 0;

  friend bool operator==(const CommitRecord&, const CommitRecord&) = default;
};

enum class EntryKind { blob, tree };

std::string_view entry_kind_name(EntryKind kind) noexcept;

// 040000 (or git's on-disk spelling 40000) is a tree; everything else is a blob.
EntryKind entry_kind_from_mode(std::string_view mode) noexcept;
bool is_gitlink_mode(std::string_view mode) noexcept;
bool is_valid_mode(std::string_view mode) noexcept;

// Path segment rules shared by tree entries and repository paths.
bool is_valid_entry_name(std::string_view name) noexcept;

struct TreeEntry {
  std::string mode;
  EntryKind kind = EntryKind::blob;
  ObjectId child;
  std::string name;

  friend bool operator==(const TreeEntry&, const TreeEntry&) = default;
};

struct TreeRecord {
  ObjectId id;
  std::vector<TreeEntry> entries;

  friend bool operator==(const TreeRecord&, const TreeRecord&) = default;
};

struct BlobStats {
  ObjectId id;
  std::uint64_t size = 0;
  std::uint64_t line_count = 0;
  bool is_binary = false;

  friend bool operator==(const BlobStats&, const BlobStats&) = default;
};

struct ProjectRef {
  std::string project_id;
  std::vector<ObjectId> heads;

  friend bool operator==(const ProjectRef&, const ProjectRef&) = default;
};

bool is_valid_project_id(std::string_view id) noexcept;

// Immutable catalog of commits, trees, blobs and project refs. Only
// StoreBuilder can produce one, and it always validates first.
class ObjectStore {
 public:
  ObjectStore() = default;

  const std::map<ObjectId, CommitRecord>& commits() const noexcept { return commits_; }
  const std::map<ObjectId, TreeRecord>& trees() const noexcept { return trees_; }
  const std::map<ObjectId, BlobStats>& blobs() const noexcept { return blobs_; }
  // Sorted by project_id.
  const std::vector<ProjectRef>& projects() const noexcept { return projects_; }

  const CommitRecord* find_commit(const ObjectId& id) const noexcept;
  const TreeRecord* find_tree(const ObjectId& id) const noexcept;
  const BlobStats* find_blob(const ObjectId& id) const noexcept;
  const ProjectRef* find_project(std::string_view project_id) const noexcept;

  // Throwing variants (Errc::unresolved / Errc::unknown_project).
  const CommitRecord& commit(const ObjectId& id) const;
  const TreeRecord& tree(const ObjectId& id) const;
  const BlobStats& blob(const ObjectId& id) const;
  const ProjectRef& project(std::string_view project_id) const;

  friend bool operator==(const ObjectStore&, const ObjectStore&) = default;

 private:
  friend class StoreBuilder;

  std::map<ObjectId, CommitRecord> commits_;
  std::map<ObjectId, TreeRecord> trees_;
  std::map<ObjectId, BlobStats> blobs_;
  std::vector<ProjectRef> projects_;
};

// Checks every ObjectStore invariant; throws Error with the failing category.
void validate(const ObjectStore& store);

class StoreBuilder {
 public:
  // Re-adding an identical record is a no-op; a different record under the
  // same id throws Errc::conflicting_duplicate.
  void add_commit(CommitRecord commit);
  void add_tree(TreeRecord tree);
  void add_blob(BlobStats blob);
  void add_project(ProjectRef project);

  // Folds another store in with the same duplicate rules.
  void merge(const ObjectStore& other);

  bool has_commit(const ObjectId& id) const noexcept { return store_.commits_.count(id) != 0; }
  bool has_tree(const ObjectId& id) const noexcept { return store_.trees_.count(id) != 0; }
  bool has_blob(const ObjectId& id) const noexcept { return store_.blobs_.count(id) != 0; }

  ObjectStore build() &&;

 private:
  ObjectStore store_;
  std::map<std::string, ProjectRef> projects_;
};

}  // namespace repomine
