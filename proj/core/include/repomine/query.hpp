#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "repomine/langclass.hpp"
#include "repomine/metadata.hpp"

namespace repomine {

enum class Field {
  n_authors,   // projects only
  n_commits,
  n_files,
  first_ts,
  last_ts,
  stars,       // projects only; false when absent
  n_blobs,     // authors only
  n_projects,  // authors only
  lang,        // lang.<Language>; missing counts read as 0
};

enum class Cmp { lt, le, eq, ge, gt };

struct Atom {
  Field field = Field::n_commits;
  Language lang = Language::Ada;  // meaningful only for Field::lang
  Cmp cmp = Cmp::eq;
  std::int64_t value = 0;

  friend bool operator==(const Atom&, const Atom&) = default;
};

// Conjunction of atoms.
struct Predicate {
  std::vector<Atom> atoms;

  friend bool operator==(const Predicate&, const Predicate&) = default;
};

// Grammar: atom (" AND " atom)*, atom := field cmp integer, where cmp is one
// of < <= == >= >. Errors carry a 1-based column.
Predicate parse_query(std::string_view text);

std::string to_string(const Predicate& p);

// Throws Errc::field_kind_mismatch when an atom does not apply to the
// document kind.
bool eval(const Predicate& p, const ProjMetadata& doc);
bool eval(const Predicate& p, const AuthMetadata& doc);

}  // namespace repomine
