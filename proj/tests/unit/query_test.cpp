#include <gtest/gtest.h>

#include "expect_error.hpp"
#include "repomine/query.hpp"

namespace repomine {
namespace {

ProjMetadata proj(std::uint64_t python, std::uint64_t authors) {
  ProjMetadata d;
  d.project_id = "p";
  d.n_authors = authors;
  d.n_commits = 10;
  d.n_files = python;
  if (python) d.lang_counts[Language::Python] = python;
  return d;
}

TEST(ParseQuery, Examples) {
  auto p = parse_query("lang.Python>=20 AND n_authors>=5");
  ASSERT_EQ(p.atoms.size(), 2u);
  EXPECT_EQ(p.atoms[0].field, Field::lang);
  EXPECT_EQ(p.atoms[0].lang, Language::Python);
  EXPECT_EQ(p.atoms[0].cmp, Cmp::ge);
  EXPECT_EQ(p.atoms[0].value, 20);
  EXPECT_EQ(p.atoms[1].field, Field::n_authors);
  EXPECT_EQ(parse_query("n_commits>0").atoms.size(), 1u);
  EXPECT_ERRC(parse_query("lang.Cobol>=1"), Errc::unknown_language);
  EXPECT_EQ(parse_query("lang.C/C++>1").atoms[0].lang, Language::CCpp);
}

TEST(ParseQuery, Errors) {
  EXPECT_ERRC(parse_query(""), Errc::malformed_query);
  EXPECT_ERRC(parse_query("n_stars>1"), Errc::unknown_field);
  EXPECT_ERRC(parse_query("n_commits=>1"), Errc::malformed_query);
  EXPECT_ERRC(parse_query("n_commits>"), Errc::malformed_query);
  EXPECT_ERRC(parse_query("n_commits>1 and n_files>1"), Errc::malformed_query);
  EXPECT_ERRC(parse_query("n_commits>1 AND "), Errc::malformed_query);
  try {
    parse_query("n_commits>1 AND bogus<3");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("column 17"), std::string::npos) << e.what();
  }
}

TEST(ParseQuery, ToStringRoundTrip) {
  for (const char* q : {"lang.Python>=20 AND n_authors>=5", "stars==0", "first_ts<-5 AND last_ts<=9",
                        "n_files>3 AND lang.C/C++<2"}) {
    auto p = parse_query(q);
    EXPECT_EQ(to_string(p), q);
    EXPECT_EQ(parse_query(to_string(p)), p);
  }
}

TEST(Eval, Examples) {
  auto p = parse_query("lang.Python>=20 AND n_authors>=5");
  EXPECT_TRUE(eval(p, proj(25, 6)));
  EXPECT_FALSE(eval(p, proj(25, 4)));
  EXPECT_FALSE(eval(p, proj(0, 9)));
  EXPECT_FALSE(eval(parse_query("stars>=1"), proj(1, 1)));
  EXPECT_TRUE(eval(parse_query("lang.Go==0"), proj(1, 1)));
  auto starred = proj(1, 1);
  starred.stars = 3;
  EXPECT_TRUE(eval(parse_query("stars>=1"), starred));
}

TEST(Eval, KindMismatch) {
  AuthMetadata a;
  a.author_id = "A <a>";
  a.n_commits = 1;
  a.n_projects = 2;
  EXPECT_TRUE(eval(parse_query("n_projects>=2"), a));
  EXPECT_ERRC(eval(parse_query("n_commits>5 AND stars>1"), a), Errc::field_kind_mismatch);
  EXPECT_ERRC(eval(parse_query("n_authors>1"), a), Errc::field_kind_mismatch);
  EXPECT_ERRC(eval(parse_query("n_blobs>1"), proj(1, 1)), Errc::field_kind_mismatch);
}

TEST(Eval, MonotoneInThreshold) {
  std::vector<ProjMetadata> docs;
  for (std::uint64_t py = 0; py < 30; ++py) docs.push_back(proj(py, py % 7));
  std::size_t prev = 0;
  for (int t = 40; t >= -1; --t) {
    auto p = parse_query("lang.Python>=" + std::to_string(t) + " AND n_authors>=2");
    std::size_t n = 0;
    for (const auto& d : docs) n += eval(p, d);
    EXPECT_GE(n, prev);
    prev = n;
  }
}

}  // namespace
}  // namespace repomine
