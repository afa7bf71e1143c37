#include "repomine/git_objects.hpp"

#include <zlib.h>

#include <algorithm>
#include <charconv>
#include <cstring>
#include <optional>

#include "repomine/error.hpp"

namespace repomine {

namespace {

constexpr std::size_t kBinarySniffBytes = 8000;

std::optional<std::uint64_t> parse_decimal(std::string_view s) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    return std::nullopt;
  }
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

struct Signature {
  AuthorId who;
  std::int64_t ts;
};

Signature parse_signature(std::string_view line, std::string_view header, const ObjectId& id) {
  auto fail = [&](Errc code, std::string_view why) -> Error {
    return Error(code, "commit " + id.hex() + " " + std::string(header) + " line: " +
                           std::string(why));
  };
  auto gt = line.rfind('>');
  if (gt == std::string_view::npos || line.find('<') == std::string_view::npos ||
      line.find('<') > gt) {
    throw fail(Errc::malformed_identity, "missing <email>");
  }
  std::string_view raw = line.substr(0, gt + 1);
  if (!AuthorId::is_valid(raw)) throw fail(Errc::malformed_identity, "bad identity");

  std::string_view rest = line.substr(gt + 1);
  if (rest.empty() || rest.front() != ' ') throw fail(Errc::bad_timestamp, "missing timestamp");
  rest.remove_prefix(1);
  auto sp = rest.find(' ');
  std::string_view ts_text = rest.substr(0, sp);
  auto ts = parse_decimal(ts_text);
  if (!ts || *ts > static_cast<std::uint64_t>(INT64_MAX)) {
    throw fail(Errc::bad_timestamp, "non-integer timestamp '" + std::string(ts_text) + "'");
  }
  if (sp != std::string_view::npos) {
    std::string_view tz = rest.substr(sp + 1);
    bool ok = tz.size() == 5 && (tz[0] == '+' || tz[0] == '-') && parse_decimal(tz.substr(1));
    if (!ok) throw fail(Errc::bad_timestamp, "bad timezone '" + std::string(tz) + "'");
  }
  return {AuthorId(raw), static_cast<std::int64_t>(*ts)};
}

}  // namespace

std::string_view object_kind_name(ObjectKind kind) noexcept {
  switch (kind) {
    case ObjectKind::commit: return "commit";
    case ObjectKind::tree: return "tree";
    case ObjectKind::blob: return "blob";
  }
  return "?";
}

std::string inflate_bytes(std::string_view compressed) {
  z_stream zs{};
  if (inflateInit(&zs) != Z_OK) throw Error(Errc::decompression, "inflateInit failed");
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(compressed.data()));
  zs.avail_in = static_cast<uInt>(compressed.size());

  std::string out;
  char buf[16384];
  int rc = Z_OK;
  while (rc != Z_STREAM_END) {
    zs.next_out = reinterpret_cast<Bytef*>(buf);
    zs.avail_out = sizeof(buf);
    rc = inflate(&zs, Z_NO_FLUSH);
    if (rc != Z_OK && rc != Z_STREAM_END) {
      inflateEnd(&zs);
      throw Error(Errc::decompression, zs.msg ? zs.msg : "corrupt zlib stream");
    }
    out.append(buf, sizeof(buf) - zs.avail_out);
    if (rc == Z_OK && zs.avail_in == 0 && zs.avail_out != 0) {
      inflateEnd(&zs);
      throw Error(Errc::decompression, "truncated zlib stream");
    }
  }
  inflateEnd(&zs);
  return out;
}

std::string deflate_bytes(std::string_view raw) {
  uLongf bound = compressBound(static_cast<uLong>(raw.size()));
  std::string out(bound, '\0');
  int rc = compress2(reinterpret_cast<Bytef*>(out.data()), &bound,
                     reinterpret_cast<const Bytef*>(raw.data()), static_cast<uLong>(raw.size()),
                     Z_DEFAULT_COMPRESSION);
  if (rc != Z_OK) throw Error(Errc::decompression, "compress2 failed");
  out.resize(bound);
  return out;
}

LooseObject parse_loose_object(std::string_view compressed) {
  std::string raw = inflate_bytes(compressed);
  auto nul = raw.find('\0');
  if (nul == std::string::npos) throw Error(Errc::missing_nul, "loose object header has no NUL");
  std::string_view header(raw.data(), nul);
  auto sp = header.find(' ');
  if (sp == std::string_view::npos) throw Error(Errc::syntax, "loose object header has no size");

  std::string_view kind_text = header.substr(0, sp);
  ObjectKind kind;
  if (kind_text == "commit") {
    kind = ObjectKind::commit;
  } else if (kind_text == "tree") {
    kind = ObjectKind::tree;
  } else if (kind_text == "blob") {
    kind = ObjectKind::blob;
  } else {
    throw Error(Errc::unknown_kind, "object kind '" + std::string(kind_text) + "'");
  }

  auto size = parse_decimal(header.substr(sp + 1));
  if (!size) throw Error(Errc::syntax, "loose object size '" + std::string(header.substr(sp + 1)) + "'");
  std::size_t actual = raw.size() - nul - 1;
  if (*size != actual) {
    throw Error(Errc::size_mismatch, "header says " + std::to_string(*size) + " bytes, payload has " +
                                         std::to_string(actual));
  }
  return {kind, raw.substr(nul + 1)};
}

CommitRecord parse_commit(const ObjectId& id, std::string_view payload) {
  CommitRecord c;
  c.id = id;
  bool have_tree = false, have_author = false, have_committer = false;

  std::size_t pos = 0;
  while (pos < payload.size()) {
    auto eol = payload.find('\n', pos);
    std::string_view line = payload.substr(pos, eol == std::string_view::npos ? eol : eol - pos);
    pos = eol == std::string_view::npos ? payload.size() : eol + 1;
    if (line.empty()) break;  // message follows
    if (line.front() == ' ') continue;  // continuation of gpgsig / mergetag

    auto sp = line.find(' ');
    std::string_view key = line.substr(0, sp);
    std::string_view value = sp == std::string_view::npos ? std::string_view{} : line.substr(sp + 1);

    if (key == "tree") {
      if (!ObjectId::is_valid(value)) {
        throw Error(Errc::missing_tree, "commit " + id.hex() + " has a malformed tree line");
      }
      c.tree = ObjectId(value);
      have_tree = true;
    } else if (key == "parent") {
      if (!ObjectId::is_valid(value)) {
        throw Error(Errc::syntax, "commit " + id.hex() + " has a malformed parent line");
      }
      c.parents.emplace_back(value);
    } else if (key == "author") {
      auto sig = parse_signature(value, key, id);
      c.author = std::move(sig.who);
      c.author_ts = sig.ts;
      have_author = true;
    } else if (key == "committer") {
      auto sig = parse_signature(value, key, id);
      c.committer = std::move(sig.who);
      c.commit_ts = sig.ts;
      have_committer = true;
    }
  }

  if (!have_tree) throw Error(Errc::missing_tree, "commit " + id.hex() + " has no tree line");
  if (!have_author) throw Error(Errc::malformed_identity, "commit " + id.hex() + " has no author");
  if (!have_committer) {
    throw Error(Errc::malformed_identity, "commit " + id.hex() + " has no committer");
  }
  return c;
}

ParsedTree parse_tree(std::string_view payload) {
  ParsedTree out;
  std::size_t pos = 0;
  while (pos < payload.size()) {
    auto nul = payload.find('\0', pos);
    if (nul == std::string_view::npos) {
      throw Error(Errc::missing_nul, "tree entry at offset " + std::to_string(pos) + " has no NUL");
    }
    std::string_view head = payload.substr(pos, nul - pos);
    auto sp = head.find(' ');
    if (sp == std::string_view::npos) {
      throw Error(Errc::syntax, "tree entry at offset " + std::to_string(pos) + " has no mode");
    }
    if (payload.size() - nul - 1 < 20) {
      throw Error(Errc::truncated, "tree entry at offset " + std::to_string(pos) + " ends mid-hash");
    }
    std::string_view mode = head.substr(0, sp);
    std::string_view name = head.substr(sp + 1);
    if (!is_valid_mode(mode)) {
      throw Error(Errc::syntax, "tree entry mode '" + std::string(mode) + "'");
    }
    std::span<const unsigned char, 20> raw(
        reinterpret_cast<const unsigned char*>(payload.data() + nul + 1), 20);
    pos = nul + 1 + 20;

    if (is_gitlink_mode(mode)) {
      ++out.skipped_gitlinks;
      continue;
    }
    out.entries.push_back(TreeEntry{std::string(mode), entry_kind_from_mode(mode),
                                    ObjectId::from_raw(raw), std::string(name)});
  }
  return out;
}

std::string serialize_tree(const std::vector<TreeEntry>& entries) {
  std::string out;
  for (const auto& e : entries) {
    out += e.mode;
    out += ' ';
    out += e.name;
    out += '\0';
    auto raw = e.child.raw();
    out.append(reinterpret_cast<const char*>(raw.data()), raw.size());
  }
  return out;
}

BlobStats blob_stats(const ObjectId& id, std::string_view payload) {
  BlobStats s;
  s.id = id;
  s.size = payload.size();
  auto sniff = payload.substr(0, std::min(payload.size(), kBinarySniffBytes));
  s.is_binary = sniff.find('\0') != std::string_view::npos;
  if (!s.is_binary && !payload.empty()) {
    s.line_count = static_cast<std::uint64_t>(std::count(payload.begin(), payload.end(), '\n'));
    if (payload.back() != '\n') ++s.line_count;
  }
  return s;
}

}  // namespace repomine
