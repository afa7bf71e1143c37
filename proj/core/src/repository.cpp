#include "repomine/repository.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <map>
#include <set>
#include <sstream>

#include "repomine/error.hpp"
#include "repomine/git_objects.hpp"
#include "repomine/parallel.hpp"

namespace repomine {

namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(Errc::io, "cannot read " + p.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string trim(std::string s) {
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r' || s.back() == ' ')) s.pop_back();
  return s;
}

fs::path git_dir_of(const fs::path& root) {
  if (fs::is_directory(root / ".git")) return root / ".git";
  return root;
}

bool has_packfiles(const fs::path& git_dir) {
  std::error_code ec;
  fs::path pack = git_dir / "objects" / "pack";
  if (!fs::is_directory(pack, ec)) return false;
  for (const auto& entry : fs::directory_iterator(pack, ec)) {
    if (entry.path().extension() == ".pack") return true;
  }
  return false;
}

// Branch name -> tip. Loose refs override packed ones.
std::map<std::string, ObjectId> branch_refs(const fs::path& git_dir) {
  std::map<std::string, ObjectId> refs;

  fs::path packed = git_dir / "packed-refs";
  if (fs::exists(packed)) {
    std::istringstream in(read_file(packed));
    std::string line;
    while (std::getline(in, line)) {
      line = trim(line);
      if (line.empty() || line[0] == '#' || line[0] == '^') continue;
      auto sp = line.find(' ');
      if (sp == std::string::npos) continue;
      std::string name = line.substr(sp + 1);
      if (name.rfind("refs/heads/", 0) != 0) continue;
      std::string sha = line.substr(0, sp);
      if (!ObjectId::is_valid(sha)) {
        throw Error(Errc::syntax, "packed-refs entry for " + name + " has bad id '" + sha + "'");
      }
      refs.insert_or_assign(name, ObjectId(sha));
    }
  }

  fs::path heads = git_dir / "refs" / "heads";
  if (fs::is_directory(heads)) {
    for (const auto& entry : fs::recursive_directory_iterator(heads)) {
      if (!entry.is_regular_file()) continue;
      std::string sha = trim(read_file(entry.path()));
      std::string name = "refs/heads/" + fs::relative(entry.path(), heads).generic_string();
      if (!ObjectId::is_valid(sha)) {
        throw Error(Errc::syntax, "ref " + name + " does not hold an object id");
      }
      refs.insert_or_assign(name, ObjectId(sha));
    }
  }
  return refs;
}

class LooseReader {
 public:
  explicit LooseReader(fs::path git_dir) : git_dir_(std::move(git_dir)) {}

  LooseObject read(const ObjectId& id) const {
    const std::string& hex = id.hex();
    fs::path p = git_dir_ / "objects" / hex.substr(0, 2) / hex.substr(2);
    if (!fs::exists(p)) {
      if (has_packfiles(git_dir_)) {
        throw Error(Errc::packfile_unsupported,
                    "object " + hex + " is not stored loose; packfiles are not supported, "
                    "export the history as an object stream instead");
      }
      throw Error(Errc::unreadable_object, "object " + hex + " missing from " + p.string());
    }
    try {
      return parse_loose_object(read_file(p));
    } catch (const Error& e) {
      throw Error(Errc::unreadable_object, "object " + hex + ": " + e.what());
    }
  }

 private:
  fs::path git_dir_;
};

}  // namespace

RepositoryScan scan_repository(const fs::path& repo_root, const std::string& project_id) {
  if (!is_valid_project_id(project_id)) {
    throw Error(Errc::invalid_argument, "bad project id '" + project_id + "'");
  }
  fs::path git_dir = git_dir_of(repo_root);
  if (!fs::is_directory(git_dir / "objects")) {
    throw Error(Errc::io, repo_root.string() + " has no objects/ directory");
  }

  RepositoryScan scan;
  scan.project.project_id = project_id;
  std::set<ObjectId> distinct_heads;
  for (const auto& [name, tip] : branch_refs(git_dir)) {
    if (distinct_heads.insert(tip).second) scan.project.heads.push_back(tip);
  }
  if (scan.project.heads.empty()) {
    throw Error(Errc::no_heads, repo_root.string() + " has no branch refs");
  }

  LooseReader reader(git_dir);
  StoreBuilder builder;
  std::vector<ObjectId> commit_stack;
  std::vector<ObjectId> tree_stack;

  for (const auto& head : scan.project.heads) {
    auto obj = reader.read(head);
    if (obj.kind != ObjectKind::commit) {
      throw Error(Errc::not_a_commit, "head " + head.hex() + " is a " +
                                          std::string(object_kind_name(obj.kind)));
    }
    commit_stack.push_back(head);
  }

  std::set<ObjectId> seen_commits;
  while (!commit_stack.empty()) {
    ObjectId id = commit_stack.back();
    commit_stack.pop_back();
    if (!seen_commits.insert(id).second) continue;
    auto obj = reader.read(id);
    if (obj.kind != ObjectKind::commit) {
      throw Error(Errc::not_a_commit, id.hex() + " is referenced as a commit but is a " +
                                          std::string(object_kind_name(obj.kind)));
    }
    CommitRecord c = parse_commit(id, obj.payload);
    for (const auto& p : c.parents) commit_stack.push_back(p);
    tree_stack.push_back(c.tree);
    builder.add_commit(std::move(c));
  }

  while (!tree_stack.empty()) {
    ObjectId id = tree_stack.back();
    tree_stack.pop_back();
    if (builder.has_tree(id)) continue;
    auto obj = reader.read(id);
    if (obj.kind != ObjectKind::tree) {
      throw Error(Errc::unreadable_object, id.hex() + " is referenced as a tree but is a " +
                                               std::string(object_kind_name(obj.kind)));
    }
    ParsedTree parsed = parse_tree(obj.payload);
    scan.skipped_gitlinks += parsed.skipped_gitlinks;
    for (const auto& e : parsed.entries) {
      if (e.kind == EntryKind::tree) {
        tree_stack.push_back(e.child);
      } else if (!builder.has_blob(e.child)) {
        auto blob = reader.read(e.child);
        if (blob.kind != ObjectKind::blob) {
          throw Error(Errc::unreadable_object, e.child.hex() + " is referenced as a blob but is a " +
                                                   std::string(object_kind_name(blob.kind)));
        }
        builder.add_blob(blob_stats(e.child, blob.payload));
      }
    }
    builder.add_tree(TreeRecord{id, std::move(parsed.entries)});
  }

  builder.add_project(scan.project);
  scan.delta = std::move(builder).build();
  return scan;
}

ObjectStore scan_repositories(std::vector<RepositorySource> sources, unsigned threads,
                              std::size_t* skipped_gitlinks) {
  std::sort(sources.begin(), sources.end(),
            [](const auto& a, const auto& b) { return a.project_id < b.project_id; });
  std::vector<RepositoryScan> scans(sources.size());
  parallel_for(sources.size(), threads, [&](std::size_t i) {
    scans[i] = scan_repository(sources[i].root, sources[i].project_id);
  });

  StoreBuilder builder;
  std::size_t gitlinks = 0;
  for (const auto& s : scans) {
    builder.merge(s.delta);
    gitlinks += s.skipped_gitlinks;
  }
  if (skipped_gitlinks) *skipped_gitlinks = gitlinks;
  return std::move(builder).build();
}

}  // namespace repomine
