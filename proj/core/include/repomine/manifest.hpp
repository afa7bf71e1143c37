#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace repomine {

// Pinned FNV-1a 64 (offset 14695981039346656037, prime 1099511628211).
std::uint64_t fnv1a64(std::string_view bytes) noexcept;

// FNV-1a 64 of a file's bytes, as 16 lowercase hex digits.
std::string file_digest(const std::filesystem::path& path);

// `key<TAB>value` lines, sorted by key. Used for the MANIFEST file that every
// output directory carries.
class Manifest {
 public:
  static constexpr std::string_view kFileName = "MANIFEST";

  // Missing file yields an empty manifest.
  static Manifest load(const std::filesystem::path& dir);
  void save(const std::filesystem::path& dir) const;

  void set(std::string key, std::string value);
  std::optional<std::string> get(std::string_view key) const;

  const std::map<std::string, std::string, std::less<>>& entries() const noexcept {
    return entries_;
  }

 private:
  std::map<std::string, std::string, std::less<>> entries_;
};

}  // namespace repomine
