#include "repomine/query.hpp"

#include <charconv>

#include "repomine/error.hpp"

namespace repomine {

namespace {

struct FieldName {
  std::string_view text;
  Field field;
};

constexpr FieldName kFields[] = {
    {"n_authors", Field::n_authors}, {"n_commits", Field::n_commits},
    {"n_files", Field::n_files},     {"first_ts", Field::first_ts},
    {"last_ts", Field::last_ts},     {"stars", Field::stars},
    {"n_blobs", Field::n_blobs},     {"n_projects", Field::n_projects},
};

std::string_view cmp_text(Cmp c) {
  switch (c) {
    case Cmp::lt: return "<";
    case Cmp::le: return "<=";
    case Cmp::eq: return "==";
    case Cmp::ge: return ">=";
    case Cmp::gt: return ">";
  }
  return "?";
}

bool compare(std::int64_t lhs, Cmp c, std::int64_t rhs) {
  switch (c) {
    case Cmp::lt: return lhs < rhs;
    case Cmp::le: return lhs <= rhs;
    case Cmp::eq: return lhs == rhs;
    case Cmp::ge: return lhs >= rhs;
    case Cmp::gt: return lhs > rhs;
  }
  return false;
}

std::int64_t clamp_u64(std::uint64_t v) {
  return v > static_cast<std::uint64_t>(INT64_MAX) ? INT64_MAX : static_cast<std::int64_t>(v);
}

std::int64_t lang_count(const LangCounts& counts, Language lang) {
  auto it = counts.find(lang);
  return it == counts.end() ? 0 : clamp_u64(it->second);
}

class QueryParser {
 public:
  explicit QueryParser(std::string_view text) : text_(text) {}

  Predicate parse() {
    Predicate p;
    skip_spaces();
    if (pos_ == text_.size()) fail(Errc::malformed_query, "empty query");
    while (true) {
      p.atoms.push_back(atom());
      std::size_t before = pos_;
      skip_spaces();
      if (pos_ == text_.size()) break;
      if (pos_ == before || text_.substr(pos_, 3) != "AND" || pos_ + 3 >= text_.size() ||
          text_[pos_ + 3] != ' ') {
        fail(Errc::malformed_query, "expected ' AND '");
      }
      pos_ += 3;
      skip_spaces();
    }
    return p;
  }

 private:
  [[noreturn]] void fail(Errc code, const std::string& why) const {
    throw Error(code, "column " + std::to_string(pos_ + 1) + ": " + why);
  }

  void skip_spaces() {
    while (pos_ < text_.size() && text_[pos_] == ' ') ++pos_;
  }

  Atom atom() {
    Atom a;
    std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != ' ' && text_[pos_] != '<' &&
           text_[pos_] != '>' && text_[pos_] != '=') {
      ++pos_;
    }
    std::string_view name = text_.substr(start, pos_ - start);
    if (name.empty()) fail(Errc::malformed_query, "expected a field name");

    if (name.starts_with("lang.")) {
      auto lang = language_from_name(name.substr(5));
      if (!lang) {
        pos_ = start + 5;
        fail(Errc::unknown_language, "unknown language '" + std::string(name.substr(5)) + "'");
      }
      a.field = Field::lang;
      a.lang = *lang;
    } else {
      bool found = false;
      for (const auto& f : kFields) {
        if (f.text == name) {
          a.field = f.field;
          found = true;
        }
      }
      if (!found) {
        pos_ = start;
        fail(Errc::unknown_field, "unknown field '" + std::string(name) + "'");
      }
    }

    skip_spaces();
    auto rest = text_.substr(pos_);
    if (rest.starts_with("<=")) {
      a.cmp = Cmp::le, pos_ += 2;
    } else if (rest.starts_with(">=")) {
      a.cmp = Cmp::ge, pos_ += 2;
    } else if (rest.starts_with("==")) {
      a.cmp = Cmp::eq, pos_ += 2;
    } else if (rest.starts_with("<")) {
      a.cmp = Cmp::lt, pos_ += 1;
    } else if (rest.starts_with(">")) {
      a.cmp = Cmp::gt, pos_ += 1;
    } else {
      fail(Errc::malformed_query, "expected one of < <= == >= >");
    }

    skip_spaces();
    std::size_t num_start = pos_;
    if (pos_ < text_.size() && text_[pos_] == '-') ++pos_;
    while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') ++pos_;
    auto digits = text_.substr(num_start, pos_ - num_start);
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), a.value);
    if (digits.empty() || ec != std::errc() || ptr != digits.data() + digits.size()) {
      pos_ = num_start;
      fail(Errc::malformed_query, "expected an integer");
    }
    return a;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

[[noreturn]] void mismatch(const Atom& a, std::string_view kind) {
  throw Error(Errc::field_kind_mismatch,
              "field does not apply to " + std::string(kind) + " documents: " +
                  to_string(Predicate{{a}}));
}

}  // namespace

Predicate parse_query(std::string_view text) { return QueryParser(text).parse(); }

std::string to_string(const Predicate& p) {
  std::string out;
  for (const auto& a : p.atoms) {
    if (!out.empty()) out += " AND ";
    if (a.field == Field::lang) {
      out += "lang.";
      out += language_name(a.lang);
    } else {
      for (const auto& f : kFields) {
        if (f.field == a.field) out += f.text;
      }
    }
    out += cmp_text(a.cmp);
    out += std::to_string(a.value);
  }
  return out;
}

bool eval(const Predicate& p, const ProjMetadata& d) {
  for (const auto& a : p.atoms) {
    if (a.field == Field::n_blobs || a.field == Field::n_projects) mismatch(a, "project");
  }
  for (const auto& a : p.atoms) {
    std::int64_t v = 0;
    switch (a.field) {
      case Field::n_authors: v = clamp_u64(d.n_authors); break;
      case Field::n_commits: v = clamp_u64(d.n_commits); break;
      case Field::n_files: v = clamp_u64(d.n_files); break;
      case Field::first_ts: v = d.first_ts; break;
      case Field::last_ts: v = d.last_ts; break;
      case Field::stars:
        if (!d.stars) return false;
        v = clamp_u64(*d.stars);
        break;
      case Field::lang: v = lang_count(d.lang_counts, a.lang); break;
      case Field::n_blobs:
      case Field::n_projects: mismatch(a, "project");
    }
    if (!compare(v, a.cmp, a.value)) return false;
  }
  return true;
}

bool eval(const Predicate& p, const AuthMetadata& d) {
  for (const auto& a : p.atoms) {
    if (a.field == Field::n_authors || a.field == Field::stars) mismatch(a, "author");
  }
  for (const auto& a : p.atoms) {
    std::int64_t v = 0;
    switch (a.field) {
      case Field::n_commits: v = clamp_u64(d.n_commits); break;
      case Field::n_files: v = clamp_u64(d.n_files); break;
      case Field::first_ts: v = d.first_ts; break;
      case Field::last_ts: v = d.last_ts; break;
      case Field::n_blobs: v = clamp_u64(d.n_blobs); break;
      case Field::n_projects: v = clamp_u64(d.n_projects); break;
      case Field::lang: v = lang_count(d.lang_counts, a.lang); break;
      case Field::n_authors:
      case Field::stars: mismatch(a, "author");
    }
    if (!compare(v, a.cmp, a.value)) return false;
  }
  return true;
}

}  // namespace repomine
