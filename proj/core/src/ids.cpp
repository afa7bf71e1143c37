#include "repomine/ids.hpp"

#include <algorithm>

#include "repomine/error.hpp"

namespace repomine {

namespace {

constexpr char kHexDigits[] = "0123456789abcdef";

int unhex(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  return c - 'a' + 10;
}

}  // namespace

ObjectId::ObjectId(std::string_view hex) {
  if (!is_valid(hex)) {
    throw Error(Errc::invalid_argument,
                "not a 40-char lowercase hex object id: '" + std::string(hex) + "'");
  }
  hex_ = std::string(hex);
}

bool ObjectId::is_valid(std::string_view hex) noexcept {
  return hex.size() == 40 && std::all_of(hex.begin(), hex.end(), [](char c) {
           return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f');
         });
}

ObjectId ObjectId::from_raw(std::span<const unsigned char, 20> raw) {
  ObjectId id;
  id.hex_.resize(40);
  for (std::size_t i = 0; i < 20; ++i) {
    id.hex_[2 * i] = kHexDigits[raw[i] >> 4];
    id.hex_[2 * i + 1] = kHexDigits[raw[i] & 0xf];
  }
  return id;
}

std::array<unsigned char, 20> ObjectId::raw() const {
  std::array<unsigned char, 20> out{};
  for (std::size_t i = 0; i < 20 && 2 * i + 1 < hex_.size(); ++i) {
    out[i] = static_cast<unsigned char>(unhex(hex_[2 * i]) << 4 | unhex(hex_[2 * i + 1]));
  }
  return out;
}

AuthorId::AuthorId(std::string_view raw) {
  if (!is_valid(raw)) {
    throw Error(Errc::malformed_identity, "bad author identity '" + std::string(raw) + "'");
  }
  raw_ = std::string(raw);
}

bool AuthorId::is_valid(std::string_view raw) noexcept {
  if (raw.find_first_of("\t\n\r") != std::string_view::npos) return false;
  if (std::count(raw.begin(), raw.end(), '<') != 1) return false;
  if (std::count(raw.begin(), raw.end(), '>') != 1) return false;
  auto lt = raw.find('<');
  auto gt = raw.find('>');
  return lt < gt && gt == raw.size() - 1;
}

std::string_view AuthorId::name() const noexcept {
  std::string_view r = raw_;
  auto lt = r.find('<');
  if (lt == std::string_view::npos) return {};
  auto name = r.substr(0, lt);
  while (!name.empty() && name.back() == ' ') name.remove_suffix(1);
  return name;
}

std::string_view AuthorId::email() const noexcept {
  std::string_view r = raw_;
  auto lt = r.find('<');
  auto gt = r.find('>');
  if (lt == std::string_view::npos || gt == std::string_view::npos) return {};
  return r.substr(lt + 1, gt - lt - 1);
}

}  // namespace repomine
