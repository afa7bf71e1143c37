#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "repomine/basemaps.hpp"
#include "repomine/object_store.hpp"

namespace repomine {

struct NormalizedAuthor {
  std::string name;   // lowercased, punctuation/whitespace runs -> one space, trimmed
  std::string email;  // lowercased
  std::string local;  // email before '@', empty without '@'

  friend bool operator==(const NormalizedAuthor&, const NormalizedAuthor&) = default;
};

NormalizedAuthor normalize_author(const AuthorId& author);

using HourHistogram = std::array<std::uint64_t, 24>;

// Commits per UTC hour of day, bucketed by commit_ts.
HourHistogram hour_histogram(const AuthorId& author, const BaseMaps& maps, const ObjectStore& store);

std::size_t levenshtein(std::string_view a, std::string_view b);

struct IdentityWeights {
  double name = 0.4;
  double email_local = 0.2;
  double hours = 0.2;
  double files = 0.2;

  // Throws Errc::invalid_argument unless all are >= 0 and they sum to 1.
  void check() const;
};

struct IdentityFeatures {
  double name_sim = 0.0;
  double email_local_match = 0.0;
  double hour_sim = 0.0;
  double file_overlap = 0.0;
  bool names_present = true;  // false when either normalized name is empty
};

IdentityFeatures identity_features(const AuthorId& a, const AuthorId& b, const BaseMaps& maps,
                                   const ObjectStore& store);

// Weighted feature sum. When a name is missing its weight is split evenly
// across the other three features. Identical raw ids score 1.
double score(const IdentityFeatures& f, const IdentityWeights& w = {});
double similarity(const AuthorId& a, const AuthorId& b, const BaseMaps& maps,
                  const ObjectStore& store, const IdentityWeights& w = {});

struct IdentityPartition {
  // Each group is sorted; its first element is the representative. Groups
  // are sorted by representative.
  std::vector<std::vector<std::string>> groups;

  friend bool operator==(const IdentityPartition&, const IdentityPartition&) = default;
};

// Merges every candidate pair scoring >= theta (transitively). Candidate
// pairs share a name token, an email local part, or a touched path.
IdentityPartition merge(const std::vector<AuthorId>& authors, double theta, const BaseMaps& maps,
                        const ObjectStore& store, const IdentityWeights& w = {},
                        unsigned threads = 1);

// `representative<TAB>alias;alias...` for every group with aliases.
void write_identities(const std::filesystem::path& file, const IdentityPartition& partition);

}  // namespace repomine
