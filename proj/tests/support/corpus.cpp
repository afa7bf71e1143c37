#include "corpus.hpp"

#include <algorithm>
#include <cstdio>

namespace repomine::testing {

namespace {

std::uint64_t mix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

ObjectId CorpusBuilder::make_id(const std::string& canonical) {
  auto it = ids_.find(canonical);
  if (it != ids_.end()) return it->second;
  std::uint64_t n = ids_.size();
  char buf[41];
  std::snprintf(buf, sizeof(buf), "%016llx%016llx%08llx",
                static_cast<unsigned long long>(mix(n * 2)),
                static_cast<unsigned long long>(mix(n * 2 + 1)),
                static_cast<unsigned long long>(n & 0xffffffffULL));
  ObjectId id(buf);
  ids_.emplace(canonical, id);
  return id;
}

ObjectId CorpusBuilder::blob(const std::string& tag, std::uint64_t lines, bool binary) {
  ObjectId id = make_id("blob\n" + tag + "\n" + std::to_string(lines) + (binary ? "b" : "t"));
  BlobStats s;
  s.id = id;
  s.is_binary = binary;
  s.line_count = binary ? 0 : lines;
  s.size = binary ? 64 + lines : lines * 24;
  builder_.add_blob(s);
  return id;
}

ObjectId CorpusBuilder::tree(const std::map<std::string, ObjectId>& files) {
  std::map<std::string, ObjectId> here;
  std::map<std::string, std::map<std::string, ObjectId>> subdirs;
  for (const auto& [path, blob] : files) {
    auto slash = path.find('/');
    if (slash == std::string::npos) {
      here.emplace(path, blob);
    } else {
      subdirs[path.substr(0, slash)].emplace(path.substr(slash + 1), blob);
    }
  }
  TreeRecord t;
  for (const auto& [name, blob] : here) t.entries.push_back({"100644", EntryKind::blob, blob, name});
  for (const auto& [name, sub] : subdirs) t.entries.push_back({"40000", EntryKind::tree, tree(sub), name});
  std::sort(t.entries.begin(), t.entries.end(),
            [](const TreeEntry& a, const TreeEntry& b) { return a.name < b.name; });
  std::string canonical = "tree\n";
  for (const auto& e : t.entries) canonical += e.mode + " " + e.name + " " + e.child.hex() + "\n";
  t.id = make_id(canonical);
  builder_.add_tree(t);
  return t.id;
}

ObjectId CorpusBuilder::commit(const ObjectId& tree, const std::vector<ObjectId>& parents,
                               const std::string& author, std::int64_t ts,
                               const std::string& salt) {
  std::string canonical = "commit\n" + tree.hex() + "\n";
  for (const auto& p : parents) canonical += p.hex() + "\n";
  canonical += author + "\n" + std::to_string(ts) + "\n" + salt;
  CommitRecord c;
  c.id = make_id(canonical);
  c.tree = tree;
  c.parents = parents;
  c.author = AuthorId(author);
  c.committer = AuthorId(author);
  c.author_ts = ts;
  c.commit_ts = ts;
  builder_.add_commit(c);
  return c.id;
}

ObjectId CorpusBuilder::commit_files(const std::map<std::string, ObjectId>& files,
                                     const std::vector<ObjectId>& parents,
                                     const std::string& author, std::int64_t ts,
                                     const std::string& salt) {
  return commit(tree(files), parents, author, ts, salt);
}

void CorpusBuilder::project(const std::string& id, const std::vector<ObjectId>& heads) {
  builder_.add_project(ProjectRef{id, heads});
}

ObjectStore CorpusBuilder::build() const {
  StoreBuilder copy = builder_;
  return std::move(copy).build();
}

namespace {

struct Branch {
  ObjectId head;
  std::map<std::string, ObjectId> files;
  std::int64_t ts = 0;
};

const char* kExtensions[] = {".py", ".c", ".h", ".js", ".go", ".rs", ".java", ".md", "", ".txt",
                             ".rb", ".sql", ".F90", ".PY"};
const char* kDirs[] = {"", "src/", "src/core/", "lib/", "docs/", "tests/", "src/util/"};

}  // namespace

RandomCorpus random_corpus(const RandomCorpusParams& p) {
  std::mt19937_64 rng(p.seed);
  auto pick = [&rng](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
  auto chance = [&rng](double prob) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < prob;
  };

  std::vector<std::string> authors;
  for (std::size_t i = 0; i < p.authors; ++i) {
    authors.push_back("Dev " + std::to_string(i) + " <dev" + std::to_string(i) + "@example.org>");
  }
  std::vector<std::string> paths;
  for (std::size_t i = 0; i < p.paths; ++i) {
    paths.push_back(std::string(kDirs[pick(std::size(kDirs))]) + "f" + std::to_string(i) +
                    kExtensions[pick(std::size(kExtensions))]);
  }
  // "src" is also used as a file name in some projects to exercise
  // blob/tree kind changes at the same path.
  paths.push_back("docs");

  CorpusBuilder b;
  RandomCorpus out;
  std::vector<std::vector<Branch>> finished;
  std::uint64_t blob_counter = 0;
  auto new_blob = [&](const std::string& path) {
    std::uint64_t lines = 1 + pick(120);
    bool binary = chance(0.05);
    return b.blob(path + "#" + std::to_string(blob_counter++), lines, binary);
  };
  auto set_file = [&](std::map<std::string, ObjectId>& files, const std::string& path, ObjectId id) {
    // keep paths consistent: a name is either a file or a directory prefix
    for (auto it = files.begin(); it != files.end();) {
      const std::string& q = it->first;
      bool clash = (q.size() > path.size() && q.compare(0, path.size(), path) == 0 && q[path.size()] == '/') ||
                   (path.size() > q.size() && path.compare(0, q.size(), q) == 0 && path[q.size()] == '/');
      it = clash ? files.erase(it) : std::next(it);
    }
    files[path] = id;
  };

  for (std::size_t proj = 0; proj < p.projects; ++proj) {
    std::vector<Branch> branches;
    std::int64_t base_ts = 1'000'000'000 + static_cast<std::int64_t>(pick(400'000'000));
    if (!finished.empty() && chance(p.fork_prob)) {
      const auto& src = finished[pick(finished.size())];
      branches.push_back(src[pick(src.size())]);
    } else {
      Branch root;
      std::size_t n = 1 + pick(6);
      for (std::size_t i = 0; i < n; ++i) {
        const auto& path = paths[pick(paths.size())];
        set_file(root.files, path, new_blob(path));
      }
      root.ts = base_ts;
      root.head = b.commit_files(root.files, {}, authors[pick(authors.size())], root.ts,
                                 "root" + std::to_string(proj));
      branches.push_back(root);
    }

    for (std::size_t step = 0; step < p.steps_per_project; ++step) {
      std::size_t bi = pick(branches.size());
      if (branches.size() > 1 && chance(p.merge_prob)) {
        std::size_t other = pick(branches.size());
        if (other == bi) other = (bi + 1) % branches.size();
        Branch& into = branches[bi];
        const Branch& from = branches[other];
        if (into.head == from.head) continue;
        std::map<std::string, ObjectId> merged = into.files;
        for (const auto& [path, blob] : from.files) {
          auto it = merged.find(path);
          if (it == merged.end() || chance(0.5)) {
            set_file(merged, path, blob);
          } else if (it->second != blob && chance(0.3)) {
            set_file(merged, path, new_blob(path));  // conflict resolved by hand
          }
        }
        into.ts = std::max(into.ts, from.ts) + 1 + static_cast<std::int64_t>(pick(90'000));
        into.head = b.commit_files(merged, {into.head, from.head}, authors[pick(authors.size())],
                                   into.ts, "m" + std::to_string(proj) + "." + std::to_string(step));
        into.files = std::move(merged);
        ++out.merges;
        continue;
      }
      if (chance(p.branch_prob)) {
        branches.push_back(branches[bi]);
        bi = branches.size() - 1;
      }
      Branch& br = branches[bi];
      std::size_t edits = 1 + pick(3);
      for (std::size_t e = 0; e < edits; ++e) {
        const auto& path = paths[pick(paths.size())];
        if (br.files.count(path) && chance(0.15)) {
          br.files.erase(path);
        } else if (br.files.count(path) && chance(0.1)) {
          // revert to some blob this path had on another branch or keep
          const auto& donor = branches[pick(branches.size())].files;
          auto it = donor.find(path);
          set_file(br.files, path, it != donor.end() ? it->second : new_blob(path));
        } else {
          set_file(br.files, path, new_blob(path));
        }
      }
      if (br.files.empty()) set_file(br.files, paths[0], new_blob(paths[0]));
      br.ts += 1 + static_cast<std::int64_t>(pick(200'000));
      br.head = b.commit_files(br.files, {br.head}, authors[pick(authors.size())], br.ts,
                               "c" + std::to_string(proj) + "." + std::to_string(step));
    }

    std::vector<ObjectId> heads;
    for (const auto& br : branches) {
      if (std::find(heads.begin(), heads.end(), br.head) == heads.end()) heads.push_back(br.head);
    }
    char name[32];
    std::snprintf(name, sizeof(name), "proj%03zu", proj);
    b.project(name, heads);
    finished.push_back(std::move(branches));
  }
  out.store = b.build();
  return out;
}

}  // namespace repomine::testing
