#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>

namespace repomine {

// 40-character lowercase hex object identifier. In object-stream mode the
// value is opaque and need not be a real content hash.
class ObjectId {
 public:
  ObjectId() = default;

  // Throws Error(invalid_argument) unless `hex` is 40 chars of [0-9a-f].
  explicit ObjectId(std::string_view hex);

  static bool is_valid(std::string_view hex) noexcept;
  static ObjectId from_raw(std::span<const unsigned char, 20> raw);

  const std::string& hex() const noexcept { return hex_; }
  bool empty() const noexcept { return hex_.empty(); }

  std::array<unsigned char, 20> raw() const;

  friend auto operator<=>(const ObjectId&, const ObjectId&) = default;

 private:
  std::string hex_;
};

// Raw `Name <email>` identity as recorded in commit headers.
class AuthorId {
 public:
  AuthorId() = default;

  // Throws Error(malformed_identity) when the invariants do not hold.
  explicit AuthorId(std::string_view raw);

  static bool is_valid(std::string_view raw) noexcept;

  const std::string& raw() const noexcept { return raw_; }
  std::string_view name() const noexcept;
  std::string_view email() const noexcept;

  friend auto operator<=>(const AuthorId&, const AuthorId&) = default;

 private:
  std::string raw_;
};

}  // namespace repomine

template <>
struct std::hash<repomine::ObjectId> {
  std::size_t operator()(const repomine::ObjectId& id) const noexcept {
    return std::hash<std::string>{}(id.hex());
  }
};

template <>
struct std::hash<repomine::AuthorId> {
  std::size_t operator()(const repomine::AuthorId& id) const noexcept {
    return std::hash<std::string>{}(id.raw());
  }
};
