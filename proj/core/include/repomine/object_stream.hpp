#pragma once

#include <iosfwd>
#include <string>

#include "repomine/object_store.hpp"

namespace repomine {

// Object Stream v1: LF-terminated, tab-separated records.
//
//   C  sha  tree  parents|-  author  author_ts  committer  commit_ts
//   T  sha  n            (followed by n E lines)
//   E  mode  blob|tree  child  name
//   B  sha  size  line_count  0|1
//   P  project_id  head[,head...]
//
// Lines starting with '#' are comments. Records may come in any order; all
// references must resolve by end of stream.
ObjectStore read_object_stream(std::istream& in);
ObjectStore read_object_stream_file(const std::string& path);

// Writes projects, commits, trees and blobs in sorted order, so equal stores
// produce identical bytes.
void write_object_stream(std::ostream& out, const ObjectStore& store);
void write_object_stream_file(const std::string& path, const ObjectStore& store);

}  // namespace repomine
