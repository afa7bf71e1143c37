#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace repomine {

// The 22 languages tracked in metadata documents, in export order.
enum class Language : std::uint8_t {
  Ada, CCpp, COBOL, CSharp, Erlang, Fml, Fortran, Go, Java, JavaScript, JL,
  Lisp, Lua, Perl, PHP, Python, R, Ruby, Rust, Scala, SQL, Swift,
};

inline constexpr std::size_t kLanguageCount = 22;

const std::array<Language, kLanguageCount>& all_languages() noexcept;

// Exported spelling, e.g. "C/C++" or "CSharp".
std::string_view language_name(Language lang) noexcept;

// Case-sensitive inverse of language_name.
std::optional<Language> language_from_name(std::string_view name) noexcept;

// Lowercase extension (no dot) -> language.
class ExtensionTable {
 public:
  ExtensionTable() = default;

  static const ExtensionTable& defaults();

  // Starts from the default table and applies `extension<TAB>LanguageName`
  // lines on top. Unknown language names throw Errc::unknown_language.
  static ExtensionTable with_overrides(std::istream& in);
  static ExtensionTable with_overrides_file(const std::string& path);

  void set(std::string_view extension, Language lang);
  std::optional<Language> lookup(std::string_view extension) const;

  // Extension is everything after the last '.' of the final path segment,
  // lowercased. No dot, a trailing dot, or an unknown extension gives nullopt.
  std::optional<Language> classify(std::string_view path) const;

  const std::map<std::string, Language>& entries() const noexcept { return table_; }

 private:
  std::map<std::string, Language> table_;
};

inline std::optional<Language> classify_path(std::string_view path) {
  return ExtensionTable::defaults().classify(path);
}

}  // namespace repomine
