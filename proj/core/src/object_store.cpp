#include "repomine/object_store.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "repomine/error.hpp"

namespace repomine {

std::string_view entry_kind_name(EntryKind kind) noexcept {
  return kind == EntryKind::tree ? "tree" : "blob";
}

EntryKind entry_kind_from_mode(std::string_view mode) noexcept {
  return (mode == "40000" || mode == "040000") ? EntryKind::tree : EntryKind::blob;
}

bool is_gitlink_mode(std::string_view mode) noexcept { return mode == "160000"; }

bool is_valid_mode(std::string_view mode) noexcept {
  return !mode.empty() && mode.size() <= 6 &&
         std::all_of(mode.begin(), mode.end(), [](char c) { return c >= '0' && c <= '7'; });
}

bool is_valid_entry_name(std::string_view name) noexcept {
  if (name.empty() || name == "." || name == "..") return false;
  return name.find_first_of(std::string_view("/\t\n\0", 4)) == std::string_view::npos;
}

bool is_valid_project_id(std::string_view id) noexcept {
  return !id.empty() && id.find_first_of("\t\n\r") == std::string_view::npos;
}

const CommitRecord* ObjectStore::find_commit(const ObjectId& id) const noexcept {
  auto it = commits_.find(id);
  return it == commits_.end() ? nullptr : &it->second;
}

const TreeRecord* ObjectStore::find_tree(const ObjectId& id) const noexcept {
  auto it = trees_.find(id);
  return it == trees_.end() ? nullptr : &it->second;
}

const BlobStats* ObjectStore::find_blob(const ObjectId& id) const noexcept {
  auto it = blobs_.find(id);
  return it == blobs_.end() ? nullptr : &it->second;
}

const ProjectRef* ObjectStore::find_project(std::string_view project_id) const noexcept {
  auto it = std::lower_bound(
      projects_.begin(), projects_.end(), project_id,
      [](const ProjectRef& p, std::string_view id) { return p.project_id < id; });
  if (it == projects_.end() || it->project_id != project_id) return nullptr;
  return &*it;
}

const CommitRecord& ObjectStore::commit(const ObjectId& id) const {
  if (auto* c = find_commit(id)) return *c;
  throw Error(Errc::unresolved, "commit " + id.hex() + " not in store");
}

const TreeRecord& ObjectStore::tree(const ObjectId& id) const {
  if (auto* t = find_tree(id)) return *t;
  throw Error(Errc::unresolved, "tree " + id.hex() + " not in store");
}

const BlobStats& ObjectStore::blob(const ObjectId& id) const {
  if (auto* b = find_blob(id)) return *b;
  throw Error(Errc::unresolved, "blob " + id.hex() + " not in store");
}

const ProjectRef& ObjectStore::project(std::string_view project_id) const {
  if (auto* p = find_project(project_id)) return *p;
  throw Error(Errc::unknown_project, "project '" + std::string(project_id) + "' not in store");
}

namespace {

void check_acyclic(const ObjectStore& store) {
  enum class Mark : unsigned char { unvisited, active, done };
  std::map<ObjectId, Mark> marks;
  for (const auto& [id, _] : store.commits()) marks.emplace(id, Mark::unvisited);

  struct Frame {
    const CommitRecord* commit;
    std::size_t next_parent;
  };
  std::vector<Frame> stack;
  for (const auto& [root_id, root] : store.commits()) {
    if (marks[root_id] != Mark::unvisited) continue;
    marks[root_id] = Mark::active;
    stack.push_back({&root, 0});
    while (!stack.empty()) {
      Frame& top = stack.back();
      if (top.next_parent == top.commit->parents.size()) {
        marks[top.commit->id] = Mark::done;
        stack.pop_back();
        continue;
      }
      const ObjectId& parent = top.commit->parents[top.next_parent++];
      Mark& m = marks[parent];
      if (m == Mark::active) {
        throw Error(Errc::cycle, "commit graph cycle through " + parent.hex());
      }
      if (m == Mark::unvisited) {
        m = Mark::active;
        stack.push_back({&store.commit(parent), 0});
      }
    }
  }
}

}  // namespace

void validate(const ObjectStore& store) {
  for (const auto& [id, blob] : store.blobs()) {
    if (blob.id != id) throw Error(Errc::invariant, "blob keyed under wrong id " + id.hex());
    if (blob.is_binary && blob.line_count != 0) {
      throw Error(Errc::invariant, "binary blob " + id.hex() + " has a line count");
    }
    if (blob.size == 0 && blob.line_count != 0) {
      throw Error(Errc::invariant, "empty blob " + id.hex() + " has a line count");
    }
  }

  for (const auto& [id, tree] : store.trees()) {
    if (tree.id != id) throw Error(Errc::invariant, "tree keyed under wrong id " + id.hex());
    std::set<std::string_view> names;
    for (const auto& e : tree.entries) {
      if (!is_valid_entry_name(e.name)) {
        throw Error(Errc::invariant, "tree " + id.hex() + " has illegal entry name '" + e.name + "'");
      }
      if (!names.insert(e.name).second) {
        throw Error(Errc::invariant, "tree " + id.hex() + " repeats entry '" + e.name + "'");
      }
      if (!is_valid_mode(e.mode) || entry_kind_from_mode(e.mode) != e.kind) {
        throw Error(Errc::invariant, "tree " + id.hex() + " entry '" + e.name +
                                         "' has mode " + e.mode + " inconsistent with its kind");
      }
      bool resolved = e.kind == EntryKind::tree ? store.find_tree(e.child) != nullptr
                                                : store.find_blob(e.child) != nullptr;
      if (!resolved) {
        throw Error(Errc::dangling_reference, "tree " + id.hex() + " entry '" + e.name + "' -> " +
                                                  std::string(entry_kind_name(e.kind)) + " " +
                                                  e.child.hex());
      }
    }
  }

  for (const auto& [id, c] : store.commits()) {
    if (c.id != id) throw Error(Errc::invariant, "commit keyed under wrong id " + id.hex());
    if (!store.find_tree(c.tree)) {
      throw Error(Errc::dangling_reference, "commit " + id.hex() + " -> tree " + c.tree.hex());
    }
    if (c.author_ts < 0 || c.commit_ts < 0) {
      throw Error(Errc::invariant, "commit " + id.hex() + " has a negative timestamp");
    }
    std::set<ObjectId> seen;
    for (const auto& p : c.parents) {
      if (p == id) throw Error(Errc::cycle, "commit " + id.hex() + " is its own parent");
      if (!seen.insert(p).second) {
        throw Error(Errc::invariant, "commit " + id.hex() + " repeats parent " + p.hex());
      }
      if (!store.find_commit(p)) {
        throw Error(Errc::dangling_reference, "commit " + id.hex() + " -> parent " + p.hex());
      }
    }
  }
  check_acyclic(store);

  const std::string* previous = nullptr;
  for (const auto& p : store.projects()) {
    if (!is_valid_project_id(p.project_id)) {
      throw Error(Errc::invariant, "illegal project id '" + p.project_id + "'");
    }
    if (previous && !(*previous < p.project_id)) {
      throw Error(Errc::invariant, "project ids not unique and sorted at '" + p.project_id + "'");
    }
    previous = &p.project_id;
    if (p.heads.empty()) throw Error(Errc::invariant, "project '" + p.project_id + "' has no heads");
    for (const auto& h : p.heads) {
      if (!store.find_commit(h)) {
        throw Error(Errc::dangling_reference, "project '" + p.project_id + "' head " + h.hex());
      }
    }
  }
}

namespace {

template <class Map, class Record>
void insert_or_check(Map& map, Record record, std::string_view what) {
  auto [it, inserted] = map.try_emplace(record.id, record);
  if (!inserted && !(it->second == record)) {
    throw Error(Errc::conflicting_duplicate,
                std::string(what) + " " + record.id.hex() + " redefined with different content");
  }
}

}  // namespace

void StoreBuilder::add_commit(CommitRecord commit) {
  insert_or_check(store_.commits_, std::move(commit), "commit");
}

void StoreBuilder::add_tree(TreeRecord tree) {
  insert_or_check(store_.trees_, std::move(tree), "tree");
}

void StoreBuilder::add_blob(BlobStats blob) {
  insert_or_check(store_.blobs_, std::move(blob), "blob");
}

void StoreBuilder::add_project(ProjectRef project) {
  auto [it, inserted] = projects_.try_emplace(project.project_id, project);
  if (!inserted && !(it->second == project)) {
    throw Error(Errc::conflicting_duplicate,
                "project '" + project.project_id + "' redefined with different heads");
  }
}

void StoreBuilder::merge(const ObjectStore& other) {
  for (const auto& [_, c] : other.commits()) add_commit(c);
  for (const auto& [_, t] : other.trees()) add_tree(t);
  for (const auto& [_, b] : other.blobs()) add_blob(b);
  for (const auto& p : other.projects()) add_project(p);
}

ObjectStore StoreBuilder::build() && {
  store_.projects_.clear();
  store_.projects_.reserve(projects_.size());
  for (auto& [_, p] : projects_) store_.projects_.push_back(std::move(p));
  projects_.clear();
  validate(store_);
  return std::move(store_);
}

}  // namespace repomine
