#include "repomine/reachability.hpp"

#include <vector>

#include "repomine/error.hpp"

namespace repomine {

std::set<ObjectId> reachable_commits(const ObjectStore& store, std::span<const ObjectId> heads) {
  std::set<ObjectId> seen;
  std::vector<const CommitRecord*> stack;
  for (const auto& h : heads) {
    const CommitRecord* c = store.find_commit(h);
    if (!c) throw Error(Errc::unresolved, "head " + h.hex() + " is not a commit in the store");
    if (seen.insert(h).second) stack.push_back(c);
  }
  while (!stack.empty()) {
    const CommitRecord* c = stack.back();
    stack.pop_back();
    for (const auto& p : c->parents) {
      if (seen.insert(p).second) stack.push_back(&store.commit(p));
    }
  }
  return seen;
}

}  // namespace repomine
