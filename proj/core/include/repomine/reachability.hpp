#pragma once

#include <set>
#include <span>

#include "repomine/object_store.hpp"

namespace repomine {

// All commits reachable from `heads` through parent edges, heads included.
// Throws Errc::unresolved if a head or parent is missing from the store.
std::set<ObjectId> reachable_commits(const ObjectStore& store, std::span<const ObjectId> heads);

}  // namespace repomine
