#pragma once

#include <vector>

namespace gbundle {

class Graph;

// A walk x_0, x_1, ..., x_N. Vertices may repeat; a loop has x_0 == x_N and
// a single vertex is a loop of length 0.
struct Path {
  std::vector<int> vertices;

  int length() const {
    return vertices.empty() ? 0 : static_cast<int>(vertices.size()) - 1;
  }
  bool closed() const {
    return !vertices.empty() && vertices.front() == vertices.back();
  }
  int front() const { return vertices.front(); }
  int back() const { return vertices.back(); }

  Path reversed() const { return Path{{vertices.rbegin(), vertices.rend()}}; }

  friend bool operator==(const Path&, const Path&) = default;
};

// Throws Error(kInvalidPath) unless every consecutive pair is adjacent.
void require_walk(const Graph& g, const Path& p);
// As require_walk, plus Error(kInvalidLoop) if the walk is not closed.
void require_loop(const Graph& g, const Path& p);

// Collapses consecutive repeats: the projection index recurrence.
Path deduplicate(const std::vector<int>& sequence);

}  // namespace gbundle
