#include <gtest/gtest.h>

#include "expect_error.hpp"
#include "git_fixture.hpp"
#include "repomine/repository.hpp"

namespace repomine {
namespace {

using testing::git_available;
using testing::git_env;
using testing::lines_of;
using testing::run_in;
using testing::TempDir;
using testing::write_text;

std::string git(const std::filesystem::path& dir, const std::string& args) {
  return run_in(dir, git_env() + "git -c gc.auto=0 -c init.defaultBranch=main " + args);
}

void commit_all(const std::filesystem::path& dir, const std::string& msg, int ts,
                const std::string& author = "Dev <dev@example.com>") {
  git(dir, "add -A");
  std::string date = std::to_string(ts) + " +0000";
  run_in(dir, git_env() + "GIT_AUTHOR_DATE='" + date + "' GIT_COMMITTER_DATE='" + date +
                  "' git -c gc.auto=0 commit -q --allow-empty -m '" + msg + "' --author='" +
                  author + "'");
}

class RepositoryTest : public ::testing::Test {
 protected:
  void SetUp() override {
    if (!git_available()) GTEST_SKIP() << "git not installed";
  }
  TempDir tmp_;
};

TEST_F(RepositoryTest, OneBranchTwoCommits) {
  auto dir = tmp_.path();
  git(dir, "init -q");
  write_text(dir / "a.py", "print(1)\n");
  commit_all(dir, "one", 1500000000);
  write_text(dir / "src/b.c", "int x;\n");
  commit_all(dir, "two", 1500000100);

  auto scan = scan_repository(dir, "proj");
  std::string tip = lines_of(git(dir, "rev-parse HEAD")).at(0);
  ASSERT_EQ(scan.project.heads.size(), 1u);
  EXPECT_EQ(scan.project.heads[0].hex(), tip);
  EXPECT_EQ(scan.delta.commits().size(), 2u);
  for (const auto& sha : lines_of(git(dir, "rev-list --all"))) {
    EXPECT_TRUE(scan.delta.find_commit(ObjectId(sha))) << sha;
  }
  for (const auto& sha : lines_of(git(dir, "rev-list --all --objects"))) {
    ObjectId id(sha.substr(0, 40));
    EXPECT_TRUE(scan.delta.find_commit(id) || scan.delta.find_tree(id) || scan.delta.find_blob(id))
        << sha;
  }
  auto head = scan.delta.commit(ObjectId(tip));
  EXPECT_EQ(head.commit_ts, 1500000100);
  EXPECT_EQ(head.author.raw(), "Dev <dev@example.com>");
  EXPECT_EQ(scan.delta.blobs().size(), 2u);
}

TEST_F(RepositoryTest, BareRepositoryAndBlobStats) {
  auto work = tmp_.path() / "work";
  std::filesystem::create_directories(work);
  git(work, "init -q");
  write_text(work / "x.txt", "a\nb\nc");
  commit_all(work, "one", 1400000001);
  git(tmp_.path(), "clone -q --bare --no-local work bare.git");
  // A fresh clone packs its objects; unpack so the store stays loose.
  auto bare = tmp_.path() / "bare.git";
  run_in(bare, "mkdir -p ../packs && mv objects/pack/*.pack ../packs/ && rm -f objects/pack/*.idx");
  run_in(bare, "for p in ../packs/*.pack; do git unpack-objects -q < $p; done");
  auto scan = scan_repository(bare, "bare");
  ASSERT_EQ(scan.delta.blobs().size(), 1u);
  const auto& blob = scan.delta.blobs().begin()->second;
  EXPECT_EQ(blob.size, 5u);
  EXPECT_EQ(blob.line_count, 3u);
}

TEST_F(RepositoryTest, NoHeads) {
  git(tmp_.path(), "init -q");
  EXPECT_ERRC(scan_repository(tmp_.path(), "empty"), Errc::no_heads);
}

TEST_F(RepositoryTest, PackedHistoryRejected) {
  auto dir = tmp_.path();
  git(dir, "init -q");
  write_text(dir / "a.py", "x\n");
  commit_all(dir, "one", 1400000001);
  git(dir, "gc -q --prune=now");
  EXPECT_ERRC(scan_repository(dir, "packed"), Errc::packfile_unsupported);
}

TEST_F(RepositoryTest, BranchesAndPackedRefs) {
  auto dir = tmp_.path();
  git(dir, "init -q");
  write_text(dir / "a.py", "x\n");
  commit_all(dir, "one", 1400000001);
  git(dir, "branch side");
  write_text(dir / "a.py", "y\n");
  commit_all(dir, "two", 1400000002);
  git(dir, "checkout -q side");
  write_text(dir / "b.py", "z\n");
  commit_all(dir, "three", 1400000003);
  git(dir, "pack-refs --all");
  auto scan = scan_repository(dir, "p");
  EXPECT_EQ(scan.project.heads.size(), 2u);
  EXPECT_EQ(scan.delta.commits().size(), 3u);
}

TEST_F(RepositoryTest, ScanManyMergesInProjectOrder) {
  std::vector<RepositorySource> sources;
  for (std::string name : {"zz", "aa"}) {
    auto dir = tmp_.path() / name;
    std::filesystem::create_directories(dir);
    git(dir, "init -q");
    write_text(dir / "shared.py", "same\n");
    commit_all(dir, "same", 1400000007);
    sources.push_back({dir, name});
  }
  auto one = scan_repositories(sources, 1);
  auto four = scan_repositories(sources, 4);
  EXPECT_EQ(one, four);
  ASSERT_EQ(one.projects().size(), 2u);
  EXPECT_EQ(one.projects()[0].project_id, "aa");
  // Identical content, author and dates give identical commit ids.
  EXPECT_EQ(one.commits().size(), 1u);
}

}  // namespace
}  // namespace repomine
