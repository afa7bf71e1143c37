#include "repomine/shards.hpp"

#include <charconv>
#include <fstream>
#include <iterator>

#include "repomine/error.hpp"
#include "repomine/manifest.hpp"

namespace repomine {

namespace fs = std::filesystem;

namespace {

fs::path shard_path(const fs::path& dir, std::string_view map, std::size_t index) {
  return dir / (std::string(map) + "." + std::to_string(index) + ".kv");
}

[[noreturn]] void malformed(const fs::path& file, std::size_t line_no, const std::string& why) {
  throw Error(Errc::malformed_shard, file.string() + ":" + std::to_string(line_no) + ": " + why);
}

ValueSet parse_values(std::string_view text, const fs::path& file, std::size_t line_no) {
  ValueSet out;
  std::string current;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char ch = text[i];
    if (ch == '\\') {
      if (i + 1 == text.size() || (text[i + 1] != ';' && text[i + 1] != '\\')) {
        malformed(file, line_no, "bad escape");
      }
      current += text[++i];
    } else if (ch == ';') {
      if (current.empty()) malformed(file, line_no, "empty value");
      out.insert(std::move(current));
      current.clear();
    } else {
      current += ch;
    }
  }
  if (current.empty()) malformed(file, line_no, "empty value");
  out.insert(std::move(current));
  return out;
}

}  // namespace

std::size_t shard_index(std::string_view key, std::size_t shard_count) noexcept {
  return static_cast<std::size_t>(fnv1a64(key) % shard_count);
}

bool is_valid_shard_count(std::size_t n) noexcept {
  return n >= 1 && n <= 256 && (n & (n - 1)) == 0;
}

std::string escape_value(std::string_view value) {
  std::string out;
  out.reserve(value.size());
  for (char ch : value) {
    if (ch == ';' || ch == '\\') out += '\\';
    out += ch;
  }
  return out;
}

std::vector<ShardSet> write_shards(const BaseMaps& maps, const fs::path& out_dir,
                                   std::size_t shard_count, char version) {
  if (!is_valid_shard_count(shard_count)) {
    throw Error(Errc::invalid_argument,
                "shard_count must be a power of two in [1, 256], got " + std::to_string(shard_count));
  }
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (!fs::is_directory(out_dir)) throw Error(Errc::io, "cannot create " + out_dir.string());

  std::vector<ShardSet> sets;
  std::string names;
  for (MapName m : all_maps()) {
    std::string_view name = map_name(m);
    names += (names.empty() ? "" : ",") + std::string(name);

    // Keys come out of the std::map already bytewise sorted, so each shard
    // stays sorted when appended in that order.
    std::vector<std::string> bodies(shard_count);
    for (const auto& [key, vals] : maps.map(m)) {
      if (vals.empty()) continue;
      std::string& body = bodies[shard_index(key, shard_count)];
      body += key;
      body += '\t';
      bool first = true;
      for (const auto& v : vals) {
        if (!first) body += ';';
        body += escape_value(v);
        first = false;
      }
      body += '\n';
    }

    ShardSet set{std::string(name), shard_count, {}};
    for (std::size_t i = 0; i < shard_count; ++i) {
      fs::path file = shard_path(out_dir, name, i);
      std::ofstream out(file, std::ios::binary | std::ios::trunc);
      if (!out || !out.write(bodies[i].data(), static_cast<std::streamsize>(bodies[i].size())) ||
          !out.flush()) {
        throw Error(Errc::io, "cannot write " + file.string());
      }
      set.files.push_back(std::move(file));
    }
    sets.push_back(std::move(set));
  }

  Manifest manifest = Manifest::load(out_dir);
  manifest.set("maps", names);
  manifest.set("shard_count", std::to_string(shard_count));
  manifest.set("version", std::string(1, version));
  manifest.save(out_dir);
  return sets;
}

KeyValues read_shards(const fs::path& dir, std::string_view map_name_text) {
  map_from_name(map_name_text);
  Manifest manifest = Manifest::load(dir);
  auto count_text = manifest.get("shard_count");
  if (!count_text) throw Error(Errc::missing_shard, (dir / "MANIFEST").string() + " has no shard_count");
  std::size_t shard_count = 0;
  auto [ptr, err] = std::from_chars(count_text->data(), count_text->data() + count_text->size(),
                                    shard_count);
  if (err != std::errc() || ptr != count_text->data() + count_text->size() ||
      !is_valid_shard_count(shard_count)) {
    throw Error(Errc::malformed_shard, "MANIFEST shard_count '" + *count_text + "'");
  }

  KeyValues out;
  for (std::size_t i = 0; i < shard_count; ++i) {
    fs::path file = shard_path(dir, map_name_text, i);
    std::ifstream in(file, std::ios::binary);
    if (!in) throw Error(Errc::missing_shard, file.string());
    std::string data{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    if (!data.empty() && data.back() != '\n') malformed(file, 0, "missing final LF");

    std::string_view rest = data;
    std::size_t line_no = 0;
    std::string previous;
    while (!rest.empty()) {
      ++line_no;
      auto eol = rest.find('\n');
      std::string_view line = rest.substr(0, eol);
      rest.remove_prefix(eol + 1);
      auto tab = line.find('\t');
      if (tab == std::string_view::npos) malformed(file, line_no, "missing TAB separator");
      std::string key(line.substr(0, tab));
      if (line_no > 1 && !(previous < key)) malformed(file, line_no, "keys not strictly ascending");
      if (shard_index(key, shard_count) != i) malformed(file, line_no, "key hashed to another shard");
      out.emplace(key, parse_values(line.substr(tab + 1), file, line_no));
      previous = std::move(key);
    }
  }
  return out;
}

BaseMaps read_all_shards(const fs::path& dir) {
  BaseMaps maps;
  for (MapName m : all_maps()) maps.map(m) = read_shards(dir, map_name(m));
  return maps;
}

}  // namespace repomine
