#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "corpus.hpp"
#include "expect_error.hpp"
#include "git_fixture.hpp"
#include "oracles.hpp"
#include "repomine/metadata.hpp"

namespace repomine {
namespace {

using testing::CorpusBuilder;
using testing::TempDir;

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

TEST(AggregateProjects, HandEnumeratedRoot) {
  CorpusBuilder cb;
  auto c = cb.commit_files({{"a.py", cb.blob("a")}, {"b.py", cb.blob("b")}, {"README", cb.blob("r")}},
                           {}, "A <a>", 1500000000);
  cb.project("p", {c});
  auto store = cb.build();
  auto docs = aggregate_projects(build_basemaps(store), store);
  ASSERT_EQ(docs.size(), 1u);
  const auto& d = docs[0];
  EXPECT_EQ(d.project_id, "p");
  EXPECT_EQ(d.n_authors, 1u);
  EXPECT_EQ(d.n_commits, 1u);
  EXPECT_EQ(d.n_files, 3u);
  EXPECT_EQ(d.first_ts, 1500000000);
  EXPECT_EQ(d.last_ts, 1500000000);
  EXPECT_EQ(d.lang_counts, (LangCounts{{Language::Python, 2}}));
  EXPECT_FALSE(d.fork_of);
  EXPECT_FALSE(d.stars);
}

TEST(AggregateProjects, SharedHistoryGivesIdenticalRanges) {
  CorpusBuilder cb;
  auto c1 = cb.commit_files({{"x.c", cb.blob("1")}}, {}, "A <a>", 100);
  auto c2 = cb.commit_files({{"x.c", cb.blob("2")}}, {c1}, "A <a>", 200);
  cb.project("one", {c2});
  cb.project("two", {c2});
  auto store = cb.build();
  auto docs = aggregate_projects(build_basemaps(store), store);
  ASSERT_EQ(docs.size(), 2u);
  EXPECT_EQ(docs[0].n_commits, docs[1].n_commits);
  EXPECT_EQ(docs[0].first_ts, docs[1].first_ts);
  EXPECT_EQ(docs[0].last_ts, docs[1].last_ts);
  EXPECT_EQ(docs[0].n_authors, 1u);
  EXPECT_EQ(docs[0].n_files, 1u);
}

TEST(AggregateAuthors, Examples) {
  CorpusBuilder cb;
  auto c = cb.commit_files({{"a.py", cb.blob("a")}, {"b.py", cb.blob("b")}}, {}, "A <a>", 5);
  cb.project("p", {c});
  cb.project("q", {c});
  auto store = cb.build();
  auto docs = aggregate_authors(build_basemaps(store), store);
  ASSERT_EQ(docs.size(), 1u);
  EXPECT_EQ(docs[0].author_id, "A <a>");
  EXPECT_EQ(docs[0].n_commits, 1u);
  EXPECT_EQ(docs[0].n_blobs, 2u);
  EXPECT_EQ(docs[0].n_files, 2u);
  EXPECT_EQ(docs[0].n_projects, 2u);
  EXPECT_EQ(docs[0].lang_counts, (LangCounts{{Language::Python, 2}}));
}

TEST(Aggregate, MatchesNaiveOracleAndConservation) {
  for (std::uint64_t seed : {2u, 5u, 11u}) {
    testing::RandomCorpusParams p;
    p.seed = seed;
    auto store = testing::random_corpus(p).store;
    auto maps = build_basemaps(store);
    auto projects = aggregate_projects(maps, store, ExtensionTable::defaults(), 3);
    EXPECT_EQ(projects, aggregate_projects(maps, store));
    for (const auto& d : projects) {
      auto naive = testing::naive_project(store, d.project_id);
      EXPECT_EQ(d.n_authors, naive.n_authors);
      EXPECT_EQ(d.n_commits, naive.n_commits);
      EXPECT_EQ(d.n_files, naive.n_files);
      EXPECT_EQ(d.first_ts, naive.first_ts);
      EXPECT_EQ(d.last_ts, naive.last_ts);
      EXPECT_EQ(d.lang_counts, naive.lang_counts);
    }
    auto authors = aggregate_authors(maps, store);
    std::uint64_t total = 0;
    for (const auto& a : authors) total += a.n_commits;
    EXPECT_EQ(total, store.commits().size());
  }
}

TEST(Documents, JsonKeyOrderAndRoundTrip) {
  ProjMetadata d;
  d.project_id = "p";
  d.n_authors = 1;
  d.n_commits = 2;
  d.n_files = 3;
  d.first_ts = 4;
  d.last_ts = 5;
  d.lang_counts = {{Language::Python, 2}, {Language::CCpp, 1}};
  EXPECT_EQ(to_json_line(d),
            R"({"project_id":"p","n_authors":1,"n_commits":2,"n_files":3,"first_ts":4,"last_ts":5,"lang_counts":{"C/C++":1,"Python":2}})");
  d.fork_of = "orig";
  d.stars = 9;
  EXPECT_EQ(proj_from_json(to_json_line(d)), d);

  AuthMetadata a;
  a.author_id = "Jane \"J\" <j@x>";
  a.n_commits = 1;
  a.n_blobs = 1;
  a.n_files = 1;
  a.n_projects = 1;
  a.lang_counts = {{Language::Go, 1}};
  EXPECT_EQ(auth_from_json(to_json_line(a)), a);
}

TEST(Documents, RejectsMalformed) {
  EXPECT_ERRC(proj_from_json("{"), Errc::malformed_document);
  EXPECT_ERRC(proj_from_json(R"({"project_id":"p","n_authors":1,"n_commits":1,"n_files":0,"first_ts":5,"last_ts":4,"lang_counts":{}})"),
              Errc::invariant);
  EXPECT_ERRC(proj_from_json(R"({"project_id":"p","n_authors":1,"n_commits":1,"n_files":0,"first_ts":1,"last_ts":4,"lang_counts":{"Klingon":1}})"),
              Errc::malformed_document);
}

TEST(Export, FileNameAndDeterminism) {
  TempDir tmp;
  ProjMetadata b;
  b.project_id = "b";
  b.n_authors = b.n_commits = 1;
  ProjMetadata a = b;
  a.project_id = "a";
  auto path = export_documents({b, a}, DatasetVersion('Q'), tmp.path());
  EXPECT_EQ(path.filename(), "proj_metadata.Q.jsonl");
  auto first = slurp(path);
  export_documents({a, b}, DatasetVersion('Q'), tmp.path());
  EXPECT_EQ(slurp(path), first);
  auto back = read_proj_documents(path);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0].project_id, "a");

  auto empty = export_documents(std::vector<AuthMetadata>{}, DatasetVersion('Q'), tmp.path());
  EXPECT_EQ(empty.filename(), "auth_metadata.Q.jsonl");
  EXPECT_TRUE(std::filesystem::exists(empty));
  EXPECT_EQ(slurp(empty), "");
}

TEST(DatasetVersion, Letters) {
  EXPECT_EQ(DatasetVersion::parse("Q").letter(), 'Q');
  EXPECT_ERRC(DatasetVersion::parse("q"), Errc::invalid_argument);
  EXPECT_ERRC(DatasetVersion::parse("QQ"), Errc::invalid_argument);
}

std::vector<ProjMetadata> two_docs() {
  ProjMetadata p1, p2;
  p1.project_id = "p1";
  p2.project_id = "p2";
  p1.n_authors = p1.n_commits = p2.n_authors = p2.n_commits = 1;
  return {p1, p2};
}

TEST(ImportStars, Examples) {
  auto docs = two_docs();
  std::istringstream ok("project_id,stars\np1,42\nghost,3\n");
  auto report = import_stars(ok, docs);
  EXPECT_EQ(docs[0].stars, 42u);
  EXPECT_FALSE(docs[1].stars);
  EXPECT_EQ(report.applied, 1u);
  EXPECT_EQ(report.unmatched, 1u);

  std::istringstream negative("p1,-3\n");
  EXPECT_ERRC(import_stars(negative, docs), Errc::negative_stars);
  std::istringstream junk("p1,1\np2,lots\n");
  EXPECT_ERRC(import_stars(junk, docs), Errc::malformed_csv);
}

}  // namespace
}  // namespace repomine
