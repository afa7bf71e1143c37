#include "repomine/langclass.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <utility>
#include <vector>

#include "repomine/error.hpp"

namespace repomine {

namespace {

constexpr std::array<std::string_view, kLanguageCount> kNames = {
    "Ada",  "C/C++", "COBOL", "CSharp", "Erlang", "Fml", "Fortran", "Go",
    "Java", "JavaScript", "JL", "Lisp", "Lua", "Perl", "PHP", "Python",
    "R",    "Ruby", "Rust",  "Scala", "SQL", "Swift",
};

std::string lowercase(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

ExtensionTable make_defaults() {
  const std::vector<std::pair<std::vector<std::string_view>, Language>> rows = {
      {{"ada", "adb", "ads"}, Language::Ada},
      {{"c", "h", "cc", "cpp", "cxx", "hpp", "hh"}, Language::CCpp},
      {{"cob", "cbl"}, Language::COBOL},
      {{"cs"}, Language::CSharp},
      {{"erl", "hrl"}, Language::Erlang},
      {{"ml", "mli", "fs", "fsi"}, Language::Fml},
      {{"f", "f77", "f90", "f95", "f03"}, Language::Fortran},
      {{"go"}, Language::Go},
      {{"java"}, Language::Java},
      {{"js", "jsx", "mjs"}, Language::JavaScript},
      {{"jl"}, Language::JL},
      {{"lisp", "lsp", "cl", "el"}, Language::Lisp},
      {{"lua"}, Language::Lua},
      {{"pl", "pm"}, Language::Perl},
      {{"php"}, Language::PHP},
      {{"py"}, Language::Python},
      {{"r"}, Language::R},
      {{"rb"}, Language::Ruby},
      {{"rs"}, Language::Rust},
      {{"scala", "sc"}, Language::Scala},
      {{"sql"}, Language::SQL},
      {{"swift"}, Language::Swift},
  };
  ExtensionTable t;
  for (const auto& [exts, lang] : rows) {
    for (auto e : exts) t.set(e, lang);
  }
  return t;
}

}  // namespace

const std::array<Language, kLanguageCount>& all_languages() noexcept {
  static const auto langs = [] {
    std::array<Language, kLanguageCount> a{};
    for (std::size_t i = 0; i < kLanguageCount; ++i) a[i] = static_cast<Language>(i);
    return a;
  }();
  return langs;
}

std::string_view language_name(Language lang) noexcept {
  return kNames[static_cast<std::size_t>(lang)];
}

std::optional<Language> language_from_name(std::string_view name) noexcept {
  for (std::size_t i = 0; i < kLanguageCount; ++i) {
    if (kNames[i] == name) return static_cast<Language>(i);
  }
  return std::nullopt;
}

const ExtensionTable& ExtensionTable::defaults() {
  static const ExtensionTable table = make_defaults();
  return table;
}

ExtensionTable ExtensionTable::with_overrides(std::istream& in) {
  ExtensionTable t = defaults();
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || line.find('\t', tab + 1) != std::string::npos) {
      throw Error(Errc::syntax, "extension override line " + std::to_string(line_no) +
                                    ": expected extension<TAB>LanguageName");
    }
    std::string_view name = std::string_view(line).substr(tab + 1);
    auto lang = language_from_name(name);
    if (!lang) {
      throw Error(Errc::unknown_language, "extension override line " + std::to_string(line_no) +
                                              ": unknown language '" + std::string(name) + "'");
    }
    t.set(std::string_view(line).substr(0, tab), *lang);
  }
  return t;
}

ExtensionTable ExtensionTable::with_overrides_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io, "cannot open " + path);
  return with_overrides(in);
}

void ExtensionTable::set(std::string_view extension, Language lang) {
  std::string key = lowercase(extension);
  if (key.starts_with('.')) key.erase(0, 1);
  table_.insert_or_assign(std::move(key), lang);
}

std::optional<Language> ExtensionTable::lookup(std::string_view extension) const {
  auto it = table_.find(lowercase(extension));
  if (it == table_.end()) return std::nullopt;
  return it->second;
}

std::optional<Language> ExtensionTable::classify(std::string_view path) const {
  auto slash = path.rfind('/');
  std::string_view file = slash == std::string_view::npos ? path : path.substr(slash + 1);
  auto dot = file.rfind('.');
  if (dot == std::string_view::npos || dot + 1 == file.size()) return std::nullopt;
  return lookup(file.substr(dot + 1));
}

}  // namespace repomine
