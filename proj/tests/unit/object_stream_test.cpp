#include <gtest/gtest.h>

#include <sstream>

#include "corpus.hpp"
#include "expect_error.hpp"
#include "repomine/object_stream.hpp"

namespace repomine {
namespace {

const std::string kC(40, 'c'), kT(40, 'e'), kB(40, 'b'), kD(40, 'd');

ObjectStore parse(const std::string& text) {
  std::istringstream in(text);
  return read_object_stream(in);
}

TEST(ObjectStream, MinimalStore) {
  auto store = parse("# comment\nP\tp1\t" + kC + "\nC\t" + kC + "\t" + kT +
                     "\t-\tA <a>\t1\tA <a>\t2\nT\t" + kT + "\t1\nE\t100644\tblob\t" + kB +
                     "\tf.py\nB\t" + kB + "\t4\t1\t0\n");
  EXPECT_EQ(store.projects().size(), 1u);
  EXPECT_EQ(store.commits().size(), 1u);
  EXPECT_EQ(store.trees().size(), 1u);
  EXPECT_EQ(store.blobs().size(), 1u);
  EXPECT_EQ(store.commit(ObjectId(kC)).commit_ts, 2);
}

TEST(ObjectStream, DanglingTree) {
  EXPECT_ERRC(parse("C\t" + kC + "\t" + kT + "\t-\tA <a>\t1\tA <a>\t1\n"), Errc::dangling_reference);
}

TEST(ObjectStream, SharedCommitAcrossProjects) {
  auto store = parse("P\tp1\t" + kC + "\nP\tp2\t" + kC + "\nC\t" + kC + "\t" + kT +
                     "\t-\tA <a>\t1\tA <a>\t1\nT\t" + kT + "\t0\n");
  EXPECT_EQ(store.projects().size(), 2u);
  EXPECT_EQ(store.commits().size(), 1u);
}

TEST(ObjectStream, SyntaxErrorsCarryLine) {
  try {
    parse("# ok\nX\tjunk\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::syntax);
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
  EXPECT_ERRC(parse("T\t" + kT + "\t2\nE\t100644\tblob\t" + kB + "\tf\n"), Errc::syntax);
  EXPECT_ERRC(parse("B\t" + kB + "\t4\tx\t0\n"), Errc::syntax);
  EXPECT_ERRC(parse("T\t" + kT + "\t1\nE\t40000\tblob\t" + kB + "\tf\n"), Errc::syntax);
}

TEST(ObjectStream, ConflictingDuplicates) {
  EXPECT_ERRC(parse("B\t" + kB + "\t4\t1\t0\nB\t" + kB + "\t5\t1\t0\n"), Errc::conflicting_duplicate);
}

TEST(ObjectStream, RoundTripRandomStores) {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    testing::RandomCorpusParams p;
    p.seed = seed;
    p.projects = 3 + seed % 5;
    p.steps_per_project = 5 + seed % 11;
    auto store = testing::random_corpus(p).store;
    std::stringstream buf;
    write_object_stream(buf, store);
    std::string first = buf.str();
    auto back = read_object_stream(buf);
    ASSERT_EQ(back, store) << "seed " << seed;
    std::ostringstream again;
    write_object_stream(again, back);
    ASSERT_EQ(again.str(), first) << "seed " << seed;
  }
}

}  // namespace
}  // namespace repomine
