#include "repomine/basemaps.hpp"

#include <unordered_map>

#include "repomine/error.hpp"
#include "repomine/parallel.hpp"
#include "repomine/reachability.hpp"

namespace repomine {

namespace {

constexpr std::array<std::string_view, kMapCount> kMapNames = {
    "c2a", "a2c", "p2c", "c2p", "c2f", "f2c", "c2b", "b2c", "f2b", "a2p", "c2fb",
};

std::string join_path(const std::string& prefix, const std::string& name) {
  return prefix.empty() ? name : prefix + "/" + name;
}

void diff_tree(const ObjectStore& store, const TreeRecord& tree, const std::string& prefix,
               const std::vector<const TreeRecord*>& parents, std::set<PathBlobPair>& out) {
  for (const TreeRecord* p : parents) {
    if (p->id == tree.id) return;
  }

  std::vector<std::unordered_map<std::string_view, const TreeEntry*>> parent_entries;
  parent_entries.reserve(parents.size());
  for (const TreeRecord* p : parents) {
    auto& index = parent_entries.emplace_back();
    for (const auto& e : p->entries) index.emplace(e.name, &e);
  }

  for (const auto& entry : tree.entries) {
    if (entry.kind == EntryKind::blob) {
      bool in_parent = false;
      for (const auto& index : parent_entries) {
        auto it = index.find(entry.name);
        if (it != index.end() && it->second->kind == EntryKind::blob &&
            it->second->child == entry.child) {
          in_parent = true;
          break;
        }
      }
      store.blob(entry.child);
      if (!in_parent) out.insert({join_path(prefix, entry.name), entry.child});
      continue;
    }
    std::vector<const TreeRecord*> sub_parents;
    for (const auto& index : parent_entries) {
      auto it = index.find(entry.name);
      if (it != index.end() && it->second->kind == EntryKind::tree) {
        sub_parents.push_back(&store.tree(it->second->child));
      }
    }
    diff_tree(store, store.tree(entry.child), join_path(prefix, entry.name), sub_parents, out);
  }
}

const ValueSet kEmpty;

}  // namespace

std::set<PathBlobPair> introduced_files(const ObjectStore& store, const ObjectId& commit) {
  const CommitRecord& c = store.commit(commit);
  std::vector<const TreeRecord*> parents;
  parents.reserve(c.parents.size());
  for (const auto& p : c.parents) parents.push_back(&store.tree(store.commit(p).tree));
  std::set<PathBlobPair> out;
  diff_tree(store, store.tree(c.tree), "", parents, out);
  return out;
}

const std::array<MapName, kMapCount>& all_maps() noexcept {
  static const auto maps = [] {
    std::array<MapName, kMapCount> a{};
    for (std::size_t i = 0; i < kMapCount; ++i) a[i] = static_cast<MapName>(i);
    return a;
  }();
  return maps;
}

std::string_view map_name(MapName m) noexcept { return kMapNames[static_cast<std::size_t>(m)]; }

MapName map_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kMapCount; ++i) {
    if (kMapNames[i] == name) return static_cast<MapName>(i);
  }
  throw Error(Errc::unknown_map, "no materialized map named '" + std::string(name) + "'");
}

std::optional<MapName> inverse_of(MapName m) noexcept {
  switch (m) {
    case MapName::c2a: return MapName::a2c;
    case MapName::a2c: return MapName::c2a;
    case MapName::p2c: return MapName::c2p;
    case MapName::c2p: return MapName::p2c;
    case MapName::c2f: return MapName::f2c;
    case MapName::f2c: return MapName::c2f;
    case MapName::c2b: return MapName::b2c;
    case MapName::b2c: return MapName::c2b;
    default: return std::nullopt;
  }
}

std::string encode_blob_path(const ObjectId& blob, std::string_view path) {
  std::string out = blob.hex();
  out += ':';
  out += path;
  return out;
}

PathBlobPair decode_blob_path(std::string_view value) {
  if (value.size() < 42 || value[40] != ':' || !ObjectId::is_valid(value.substr(0, 40))) {
    throw Error(Errc::malformed_shard, "bad blob:path value '" + std::string(value) + "'");
  }
  return {std::string(value.substr(41)), ObjectId(value.substr(0, 40))};
}

const ValueSet& BaseMaps::values(MapName m, std::string_view key) const noexcept {
  const auto& km = map(m);
  auto it = km.find(key);
  return it == km.end() ? kEmpty : it->second;
}

std::vector<std::string> BaseMaps::lookup(std::string_view name, std::string_view key) const {
  const ValueSet& v = values(map_from_name(name), key);
  return {v.begin(), v.end()};
}

void BaseMaps::merge(const BaseMaps& other) {
  for (std::size_t i = 0; i < kMapCount; ++i) {
    for (const auto& [key, vals] : other.maps_[i]) {
      maps_[i][key].insert(vals.begin(), vals.end());
    }
  }
}

BaseMaps build_basemaps(const ObjectStore& store, unsigned threads) {
  BaseMaps maps;
  auto add = [&maps](MapName m, const std::string& key, std::string value) {
    maps.map(m)[key].insert(std::move(value));
  };

  for (const auto& project : store.projects()) {
    for (const auto& c : reachable_commits(store, project.heads)) {
      add(MapName::p2c, project.project_id, c.hex());
      add(MapName::c2p, c.hex(), project.project_id);
    }
  }

  std::vector<const CommitRecord*> commits;
  commits.reserve(store.commits().size());
  for (const auto& [_, c] : store.commits()) commits.push_back(&c);

  std::vector<std::set<PathBlobPair>> introduced(commits.size());
  parallel_for(commits.size(), threads,
               [&](std::size_t i) { introduced[i] = introduced_files(store, commits[i]->id); });

  for (std::size_t i = 0; i < commits.size(); ++i) {
    const CommitRecord& c = *commits[i];
    const std::string& cid = c.id.hex();
    const std::string& author = c.author.raw();
    add(MapName::c2a, cid, author);
    add(MapName::a2c, author, cid);
    for (const auto& project : maps.values(MapName::c2p, cid)) add(MapName::a2p, author, project);

    for (const auto& [path, blob] : introduced[i]) {
      add(MapName::c2f, cid, path);
      add(MapName::f2c, path, cid);
      add(MapName::c2b, cid, blob.hex());
      add(MapName::b2c, blob.hex(), cid);
      add(MapName::f2b, path, blob.hex());
      add(MapName::c2fb, cid, encode_blob_path(blob, path));
    }
  }
  return maps;
}

}  // namespace repomine
