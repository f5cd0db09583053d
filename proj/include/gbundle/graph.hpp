#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace gbundle {

struct OrientedEdge {
  int tail = 0;
  int head = 0;

  OrientedEdge reversed() const { return {head, tail}; }
  friend bool operator==(const OrientedEdge&, const OrientedEdge&) = default;
  friend auto operator<=>(const OrientedEdge&, const OrientedEdge&) = default;
};

// Finite simple undirected graph on vertices 0..n-1. Immutable once built.
// Neighbor lists are sorted ascending.
class Graph {
 public:
  Graph() = default;

  // Throws Error(kInvalidGraph) on out-of-range endpoints, self-loops or
  // repeated edges.
  Graph(int n, std::span<const std::pair<int, int>> edges,
        std::vector<std::string> labels = {});

  // Adjacency lists must already be simple and symmetric; they are sorted
  // here. Throws Error(kInvalidGraph) otherwise.
  static Graph from_adjacency(std::vector<std::vector<int>> adjacency,
                              std::vector<std::string> labels = {});

  int vertex_count() const { return static_cast<int>(adj_.size()); }
  std::size_t edge_count() const { return edge_count_; }

  std::span<const int> neighbors(int v) const { return adj_[v]; }
  int degree(int v) const { return static_cast<int>(adj_[v].size()); }
  bool adjacent(int u, int v) const;

  // Common degree if every vertex has the same degree.
  std::optional<int> regular_degree() const;

  // Undirected edges as (u, v) with u < v, lexicographically sorted.
  std::vector<std::pair<int, int>> edges() const;
  std::vector<OrientedEdge> oriented_edges() const;

  bool has_labels() const { return !labels_.empty(); }
  const std::vector<std::string>& labels() const { return labels_; }
  // Label when present, decimal index otherwise.
  std::string label(int v) const;
  Graph with_labels(std::vector<std::string> labels) const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.adj_ == b.adj_ && a.labels_ == b.labels_;
  }

 private:
  std::vector<std::vector<int>> adj_;
  std::vector<std::string> labels_;
  std::size_t edge_count_ = 0;
};

struct ValidationReport {
  bool simple = true;
  bool symmetric = true;
  bool connected = true;
  std::optional<int> regular_degree;
  std::vector<std::string> findings;

  bool ok() const { return simple && symmetric && connected; }
};

// Checks raw adjacency lists without requiring them to form a valid Graph.
ValidationReport validate(const std::vector<std::vector<int>>& adjacency);
ValidationReport validate(const Graph& g);

std::vector<int> bfs_distances(const Graph& g, int source);
bool is_connected(const Graph& g);

Graph cycle_graph(int n);
Graph complete_graph(int m);
Graph cartesian_product(const Graph& g, const Graph& f);

// Relabels so that vertex v of `g` becomes vertex image[v].
Graph permute_vertices(const Graph& g, std::span<const int> image);

// Z/n1 x ... x Z/nk with elements enumerated in lexicographic order
// (last coordinate varies fastest).
class AbelianGroup {
 public:
  using Element = std::vector<int>;

  explicit AbelianGroup(std::vector<int> orders);

  const std::vector<int>& orders() const { return orders_; }
  int rank() const { return static_cast<int>(orders_.size()); }
  int size() const { return size_; }

  int index_of(const Element& g) const;
  Element element(int index) const;
  Element add(const Element& a, const Element& b) const;
  Element negate(const Element& a) const;
  Element reduce(const Element& a) const;
  bool is_identity(const Element& a) const;

 private:
  std::vector<int> orders_;
  int size_ = 1;
};

// g ~ h iff g - h or h - g is a generator. Throws Error(kInvalidParameter)
// for malformed input, Error(kInvalidGraph) if a generator is the identity
// and Error(kDisconnected) if the generators do not generate the group.
Graph cayley_graph(const std::vector<int>& orders,
                   const std::vector<AbelianGroup::Element>& generators);

// S union -S with duplicates removed, reduced and sorted.
std::vector<AbelianGroup::Element> symmetric_generators(
    const AbelianGroup& group,
    const std::vector<AbelianGroup::Element>& generators);

}  // namespace gbundle
