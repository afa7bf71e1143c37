#include <gtest/gtest.h>

#include "corpus.hpp"
#include "expect_error.hpp"
#include "oracles.hpp"
#include "repomine/basemaps.hpp"

namespace repomine {
namespace {

using testing::CorpusBuilder;

std::set<std::string> as_set(const ValueSet& v) { return {v.begin(), v.end()}; }

TEST(Introduced, RootCommitIntroducesEverything) {
  CorpusBuilder cb;
  auto a = cb.blob("a"), b = cb.blob("b");
  auto c = cb.commit_files({{"a.py", a}, {"b.c", b}}, {}, "A <a>", 1);
  cb.project("p", {c});
  auto store = cb.build();
  EXPECT_EQ(introduced_files(store, c), (std::set<PathBlobPair>{{"a.py", a}, {"b.c", b}}));
}

TEST(Introduced, UnchangedTreeIntroducesNothing) {
  CorpusBuilder cb;
  auto t = cb.tree({{"src/a.py", cb.blob("a")}});
  auto c1 = cb.commit(t, {}, "A <a>", 1);
  auto c2 = cb.commit(t, {c1}, "A <a>", 2);
  cb.project("p", {c2});
  EXPECT_TRUE(introduced_files(cb.build(), c2).empty());
}

TEST(Introduced, MergeKeepingOneSideIsNotNew) {
  CorpusBuilder cb;
  auto base = cb.blob("base"), x = cb.blob("x"), y = cb.blob("y");
  auto root = cb.commit_files({{"src/x.py", base}}, {}, "A <a>", 1);
  auto left = cb.commit_files({{"src/x.py", x}}, {root}, "A <a>", 2);
  auto right = cb.commit_files({{"src/x.py", base}, {"y.py", y}}, {root}, "A <a>", 3);
  auto merge = cb.commit_files({{"src/x.py", x}, {"y.py", y}}, {left, right}, "A <a>", 4);
  auto fixed = cb.commit_files({{"src/x.py", cb.blob("resolved")}, {"y.py", y}}, {left, right},
                               "A <a>", 5);
  cb.project("p", {merge, fixed});
  auto store = cb.build();
  EXPECT_TRUE(introduced_files(store, merge).empty());
  EXPECT_EQ(introduced_files(store, fixed), testing::brute_introduced(store, fixed));
  EXPECT_EQ(introduced_files(store, fixed).size(), 1u);
}

TEST(Introduced, RenameAndKindChange) {
  CorpusBuilder cb;
  auto a = cb.blob("a");
  auto c1 = cb.commit_files({{"docs", a}}, {}, "A <a>", 1);
  auto c2 = cb.commit_files({{"docs/a.md", a}}, {c1}, "A <a>", 2);
  auto c3 = cb.commit_files({{"docs", a}}, {c2}, "A <a>", 3);
  cb.project("p", {c3});
  auto store = cb.build();
  EXPECT_EQ(introduced_files(store, c2), (std::set<PathBlobPair>{{"docs/a.md", a}}));
  EXPECT_EQ(introduced_files(store, c3), (std::set<PathBlobPair>{{"docs", a}}));
}

TEST(Introduced, MatchesBruteForceOnRandomCorpora) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    testing::RandomCorpusParams p;
    p.seed = seed;
    auto store = testing::random_corpus(p).store;
    for (const auto& [id, c] : store.commits()) {
      ASSERT_EQ(introduced_files(store, id), testing::brute_introduced(store, id))
          << "seed " << seed << " commit " << id.hex();
    }
  }
}

TEST(BuildBaseMaps, SingleCommit) {
  CorpusBuilder cb;
  auto b1 = cb.blob("b1");
  auto c = cb.commit_files({{"f.py", b1}}, {}, "A <a>", 1);
  cb.project("P", {c});
  auto maps = build_basemaps(cb.build());
  EXPECT_EQ(maps.lookup("c2a", c.hex()), std::vector<std::string>{"A <a>"});
  EXPECT_EQ(maps.lookup("f2b", "f.py"), std::vector<std::string>{b1.hex()});
  EXPECT_EQ(maps.lookup("a2p", "A <a>"), std::vector<std::string>{"P"});
  EXPECT_EQ(maps.lookup("c2fb", c.hex()), std::vector<std::string>{encode_blob_path(b1, "f.py")});
}

TEST(BuildBaseMaps, SharedHistoryAndModifications) {
  CorpusBuilder cb;
  auto c1 = cb.commit_files({{"f.py", cb.blob("1")}}, {}, "A <a>", 1);
  auto c2 = cb.commit_files({{"f.py", cb.blob("2")}}, {c1}, "A <a>", 2);
  auto c3 = cb.commit_files({{"f.py", cb.blob("2")}, {"g", cb.blob("g")}}, {c2}, "A <a>", 3);
  cb.project("one", {c3});
  cb.project("two", {c3});
  auto maps = build_basemaps(cb.build());
  for (const auto& c : {c1, c2, c3}) EXPECT_EQ(maps.values(MapName::c2p, c.hex()).size(), 2u);
  EXPECT_EQ(maps.values(MapName::f2b, "f.py").size(), 2u);
  EXPECT_EQ(maps.values(MapName::f2c, "f.py").size(), 2u);
}

TEST(Lookup, UnknownKeysAndMaps) {
  BaseMaps maps;
  EXPECT_TRUE(maps.lookup("a2c", "Nobody <n>").empty());
  EXPECT_ERRC(maps.lookup("p2a", "x"), Errc::unknown_map);
  EXPECT_ERRC(map_from_name("nope"), Errc::unknown_map);
}

TEST(BuildBaseMaps, InverseConsistencyAndThreadInvariance) {
  testing::RandomCorpusParams p;
  p.seed = 3;
  p.projects = 15;
  auto store = testing::random_corpus(p).store;
  auto maps = build_basemaps(store, 1);
  EXPECT_EQ(build_basemaps(store, 4), maps);
  for (auto m : all_maps()) {
    auto inv = inverse_of(m);
    if (!inv) continue;
    for (const auto& [k, vs] : maps.map(m)) {
      for (const auto& v : vs) ASSERT_TRUE(maps.values(*inv, v).count(k)) << map_name(m);
    }
  }
  // c2a is functional and total over the store.
  EXPECT_EQ(maps.map(MapName::c2a).size(), store.commits().size());
  for (const auto& [k, vs] : maps.map(MapName::c2a)) EXPECT_EQ(vs.size(), 1u);
  // b2c(b) == commits whose introduced set holds b.
  for (const auto& [id, c] : store.commits()) {
    for (const auto& pair : testing::brute_introduced(store, id)) {
      EXPECT_TRUE(maps.values(MapName::b2c, pair.blob.hex()).count(id.hex()));
    }
  }
  std::size_t sum = 0;
  for (const auto& [proj, cs] : maps.map(MapName::p2c)) sum += cs.size();
  EXPECT_GE(sum, store.commits().size());
}

TEST(BuildBaseMaps, MergeIsUnion) {
  BaseMaps a, b;
  a.map(MapName::c2f)["c"] = {"x"};
  b.map(MapName::c2f)["c"] = {"y"};
  BaseMaps ab = a, ba = b;
  ab.merge(b);
  ba.merge(a);
  EXPECT_EQ(ab, ba);
  EXPECT_EQ(as_set(ab.values(MapName::c2f, "c")), (std::set<std::string>{"x", "y"}));
}

TEST(BlobPath, EncodeDecode) {
  ObjectId b(std::string(40, 'b'));
  auto enc = encode_blob_path(b, "src/a;b.py");
  auto dec = decode_blob_path(enc);
  EXPECT_EQ(dec.blob, b);
  EXPECT_EQ(dec.path, "src/a;b.py");
}

}  // namespace
}  // namespace repomine
