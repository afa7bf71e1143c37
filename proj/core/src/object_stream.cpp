#include "repomine/object_stream.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>
#include <vector>

#include "repomine/error.hpp"

namespace repomine {

namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    auto next = s.find(sep, pos);
    out.push_back(s.substr(pos, next == std::string_view::npos ? next : next - pos));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

class LineParser {
 public:
  explicit LineParser(std::size_t line_no) : line_no_(line_no) {}

  [[noreturn]] void fail(const std::string& why) const {
    throw Error(Errc::syntax, "line " + std::to_string(line_no_) + ": " + why);
  }

  ObjectId id(std::string_view s) const {
    if (!ObjectId::is_valid(s)) fail("bad object id '" + std::string(s) + "'");
    return ObjectId(s);
  }

  AuthorId author(std::string_view s) const {
    if (!AuthorId::is_valid(s)) fail("bad author id '" + std::string(s) + "'");
    return AuthorId(s);
  }

  template <class Int>
  Int number(std::string_view s, std::string_view what) const {
    Int v{};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
      fail("bad " + std::string(what) + " '" + std::string(s) + "'");
    }
    return v;
  }

  void arity(const std::vector<std::string_view>& f, std::size_t n) const {
    if (f.size() != n) {
      fail("record '" + std::string(f[0]) + "' expects " + std::to_string(n - 1) + " fields, got " +
           std::to_string(f.size() - 1));
    }
  }

 private:
  std::size_t line_no_;
};

}  // namespace

ObjectStore read_object_stream(std::istream& in) {
  StoreBuilder builder;
  std::string line;
  std::size_t line_no = 0;

  TreeRecord pending_tree;
  std::size_t pending_entries = 0;
  std::size_t tree_line = 0;

  while (std::getline(in, line)) {
    ++line_no;
    LineParser p(line_no);
    if (!line.empty() && line.back() == '\r') p.fail("CR line ending");
    if (pending_entries == 0 && (line.empty() || line.front() == '#')) continue;

    auto f = split(line, '\t');
    if (pending_entries > 0) {
      if (f[0] != "E") p.fail("expected " + std::to_string(pending_entries) + " more E records");
      p.arity(f, 5);
      TreeEntry e;
      e.mode = std::string(f[1]);
      if (!is_valid_mode(e.mode)) p.fail("bad mode '" + e.mode + "'");
      if (f[2] == "blob") {
        e.kind = EntryKind::blob;
      } else if (f[2] == "tree") {
        e.kind = EntryKind::tree;
      } else {
        p.fail("bad entry kind '" + std::string(f[2]) + "'");
      }
      if (entry_kind_from_mode(e.mode) != e.kind) p.fail("mode and kind disagree");
      e.child = p.id(f[3]);
      e.name = std::string(f[4]);
      if (!is_valid_entry_name(e.name)) p.fail("illegal entry name '" + e.name + "'");
      pending_tree.entries.push_back(std::move(e));
      if (--pending_entries == 0) builder.add_tree(std::move(pending_tree));
      continue;
    }

    if (f[0] == "C") {
      p.arity(f, 8);
      CommitRecord c;
      c.id = p.id(f[1]);
      c.tree = p.id(f[2]);
      if (f[3] != "-") {
        for (auto parent : split(f[3], ',')) c.parents.push_back(p.id(parent));
      }
      c.author = p.author(f[4]);
      c.author_ts = p.number<std::int64_t>(f[5], "author_ts");
      c.committer = p.author(f[6]);
      c.commit_ts = p.number<std::int64_t>(f[7], "commit_ts");
      builder.add_commit(std::move(c));
    } else if (f[0] == "T") {
      p.arity(f, 3);
      pending_tree = TreeRecord{p.id(f[1]), {}};
      pending_entries = p.number<std::size_t>(f[2], "entry count");
      tree_line = line_no;
      if (pending_entries == 0) builder.add_tree(std::move(pending_tree));
    } else if (f[0] == "B") {
      p.arity(f, 5);
      BlobStats b;
      b.id = p.id(f[1]);
      b.size = p.number<std::uint64_t>(f[2], "size");
      b.line_count = p.number<std::uint64_t>(f[3], "line_count");
      if (f[4] != "0" && f[4] != "1") p.fail("is_binary must be 0 or 1");
      b.is_binary = f[4] == "1";
      builder.add_blob(b);
    } else if (f[0] == "P") {
      p.arity(f, 3);
      ProjectRef ref;
      ref.project_id = std::string(f[1]);
      if (!is_valid_project_id(ref.project_id)) p.fail("bad project id");
      for (auto head : split(f[2], ',')) ref.heads.push_back(p.id(head));
      builder.add_project(std::move(ref));
    } else {
      p.fail("unknown record type '" + std::string(f[0]) + "'");
    }
  }
  if (pending_entries > 0) {
    LineParser(tree_line).fail("tree ends before its " + std::to_string(pending_entries) +
                               " remaining E records");
  }
  return std::move(builder).build();
}

ObjectStore read_object_stream_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io, "cannot open " + path);
  return read_object_stream(in);
}

void write_object_stream(std::ostream& out, const ObjectStore& store) {
  out << "# object-stream v1\n";
  for (const auto& p : store.projects()) {
    out << "P\t" << p.project_id << '\t';
    for (std::size_t i = 0; i < p.heads.size(); ++i) out << (i ? "," : "") << p.heads[i].hex();
    out << '\n';
  }
  for (const auto& [id, c] : store.commits()) {
    out << "C\t" << id.hex() << '\t' << c.tree.hex() << '\t';
    if (c.parents.empty()) out << '-';
    for (std::size_t i = 0; i < c.parents.size(); ++i) out << (i ? "," : "") << c.parents[i].hex();
    out << '\t' << c.author.raw() << '\t' << c.author_ts << '\t' << c.committer.raw() << '\t'
        << c.commit_ts << '\n';
  }
  for (const auto& [id, t] : store.trees()) {
    out << "T\t" << id.hex() << '\t' << t.entries.size() << '\n';
    for (const auto& e : t.entries) {
      out << "E\t" << e.mode << '\t' << entry_kind_name(e.kind) << '\t' << e.child.hex() << '\t'
          << e.name << '\n';
    }
  }
  for (const auto& [id, b] : store.blobs()) {
    out << "B\t" << id.hex() << '\t' << b.size << '\t' << b.line_count << '\t'
        << (b.is_binary ? 1 : 0) << '\n';
  }
}

void write_object_stream_file(const std::string& path, const ObjectStore& store) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::io, "cannot write " + path);
  write_object_stream(out, store);
  if (!out.flush()) throw Error(Errc::io, "write failed for " + path);
}

}  // namespace repomine
