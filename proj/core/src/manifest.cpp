#include "repomine/manifest.hpp"

#include <cstdio>
#include <fstream>
#include <iterator>

#include "repomine/error.hpp"

namespace repomine {

std::uint64_t fnv1a64(std::string_view bytes) noexcept {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string file_digest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io, "cannot read " + path.string());
  std::string bytes{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(fnv1a64(bytes)));
  return buf;
}

Manifest Manifest::load(const std::filesystem::path& dir) {
  Manifest m;
  std::ifstream in(dir / kFileName);
  if (!in) return m;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw Error(Errc::syntax, (dir / kFileName).string() + ":" + std::to_string(line_no) +
                                    ": expected key<TAB>value");
    }
    m.entries_.insert_or_assign(line.substr(0, tab), line.substr(tab + 1));
  }
  return m;
}

void Manifest::save(const std::filesystem::path& dir) const {
  std::ofstream out(dir / kFileName, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::io, "cannot write " + (dir / kFileName).string());
  for (const auto& [k, v] : entries_) out << k << '\t' << v << '\n';
  if (!out.flush()) throw Error(Errc::io, "write failed for " + (dir / kFileName).string());
}

void Manifest::set(std::string key, std::string value) {
  entries_.insert_or_assign(std::move(key), std::move(value));
}

std::optional<std::string> Manifest::get(std::string_view key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

}  // namespace repomine
