#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "gbundle/graph.hpp"
#include "gbundle/path.hpp"
#include "gbundle/permutation.hpp"

namespace gbundle {

// Assigns to every oriented base edge (x, y) the fiber automorphism used to
// move from the fiber over x to the fiber over y. Only one orientation is
// stored per undirected edge; the reverse is its inverse.
class Connection {
 public:
  struct Assignment {
    OrientedEdge edge;
    Permutation transport;
  };

  Connection() = default;

  // Unlisted edges carry the identity. Throws Error(kInvalidConnection),
  // naming the oriented edge, when an edge is missing from the base, a
  // permutation has the wrong size or is not a fiber automorphism, or both
  // orientations are given inconsistently.
  Connection(Graph base, Graph fiber,
             const std::vector<Assignment>& assignments = {});

  const Graph& base() const { return base_; }
  const Graph& fiber() const { return fiber_; }

  // Permutation applied when stepping from x to y; identity when x == y.
  // Throws Error(kInvalidPath) if x and y are not adjacent.
  const Permutation& transport(int x, int y) const;

  // Non-identity assignments in canonical orientation (tail < head).
  std::vector<Assignment> assignments() const;

  friend bool operator==(const Connection& a, const Connection& b) {
    return a.base_ == b.base_ && a.fiber_ == b.fiber_ &&
           a.forward_ == b.forward_;
  }

 private:
  int edge_id(int x, int y) const;

  Graph base_;
  Graph fiber_;
  Permutation identity_;
  // edge_ids_[x][k] indexes the edge to the k-th neighbor of x.
  std::vector<std::vector<int>> edge_ids_;
  std::vector<Permutation> forward_;   // low -> high
  std::vector<Permutation> backward_;  // high -> low
};

Connection identity_connection(const Graph& base, const Graph& fiber);

// Total graph over V_G x V_F with flat index (x, v) -> x * |V_F| + v.
class Bundle {
 public:
  Bundle() = default;
  // Throws Error(kDisconnected) when base or fiber is disconnected.
  explicit Bundle(Connection connection);

  const Connection& connection() const { return connection_; }
  const Graph& base() const { return connection_.base(); }
  const Graph& fiber() const { return connection_.fiber(); }
  const Graph& total() const { return total_; }

  int index(int x, int v) const { return x * fiber_size_ + v; }
  std::pair<int, int> coordinates(int id) const {
    return {id / fiber_size_, id % fiber_size_};
  }
  int project(int id) const { return id / fiber_size_; }

 private:
  Connection connection_;
  Graph total_;
  int fiber_size_ = 1;
};

Bundle build_bundle(Connection c);

// Product of transports along `walk`: later edges act after earlier ones.
Permutation path_transport(const Connection& c, const std::vector<int>& walk);

// Throws Error(kInvalidPath) / Error(kInvalidLoop).
Permutation holonomy(const Connection& c, const Path& loop);
bool is_balanced(const Connection& c, const Path& loop);

struct TrivialityResult {
  bool trivial = false;
  // When trivial: rho[y] is the transport from the root (vertex 0) to y.
  std::vector<Permutation> rho;
  // When not trivial: an unbalanced fundamental cycle based at the root.
  Path witness;
  Permutation witness_holonomy;
};

// Throws Error(kDisconnected) if the base is disconnected.
TrivialityResult is_trivial(const Connection& c);

// psi(y, v) = (y, rho_y(v)) as an image array over flat ids, verified to be
// an isomorphism from the product to the bundle that commutes with the
// projection. Throws Error(kNotTrivial) for a non-trivial connection.
std::vector<int> trivialization_isomorphism(const Connection& c);

// Fiber vertices fixed by every transport; empty means the bundle is not a
// discrete vector bundle.
std::vector<int> null_elements(const Connection& c);
// Flat ids of x -> (x, o). Throws Error(kInvalidParameter) if `o` is not a
// null element.
std::vector<int> null_section(const Bundle& b, int o);

struct EquivalenceResult {
  bool equivalent = false;
  // gauge[x] with gauge[y] * phi1(x->y) == phi2(x->y) * gauge[x].
  std::vector<Permutation> gauge;
};

// Gauge equivalence. Enumerates Aut(F) lazily; throws ResourceError if
// |Aut(F)| exceeds `automorphism_cap`.
EquivalenceResult connections_equivalent(
    const Connection& c1, const Connection& c2,
    std::size_t automorphism_cap = 3628800);

}  // namespace gbundle
