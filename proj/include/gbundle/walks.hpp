#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "gbundle/bundle.hpp"
#include "gbundle/graph.hpp"
#include "gbundle/path.hpp"
#include "gbundle/permutation.hpp"

namespace gbundle {

using BigInt = boost::multiprecision::cpp_int;

struct ProjectionPair {
  Path base_part;
  Path fiber_part;

  friend bool operator==(const ProjectionPair&, const ProjectionPair&) = default;
};

// Walk vertices are flat product ids x * |V_F| + v.
ProjectionPair project_product(const Graph& g, const Graph& f, const Path& walk);

// Fiber coordinates are pulled back through the inverse of the transport
// accumulated so far before deduplication.
ProjectionPair project_bundle(const Bundle& b, const Path& walk);

BigInt binomial(int n, int k);

// (v, v) entry of A^L.
BigInt closed_walk_count(const Graph& g, int v, int length);
// Diagonal of A^L.
std::vector<BigInt> closed_walk_counts(const Graph& g, int length);

struct ProjectionCount {
  BigInt enumerated;
  BigInt closed_form;

  bool agrees() const { return enumerated == closed_form; }
};

// Walks from `start` (flat bundle id) whose projections are exactly
// (base_loop, fiber_path), enumerated as shuffles of the two step
// sequences. base_loop must be a loop at the base coordinate of start;
// fiber_path must run from v to hol(base_loop)^-1(v). Throws
// Error(kInvalidPath) when these hypotheses fail.
ProjectionCount count_walks_with_projections(const Bundle& b, int start,
                                             const Path& base_loop,
                                             const Path& fiber_path);
// Cartesian product case (identity connection).
ProjectionCount count_walks_with_projections(const Graph& g, const Graph& f,
                                             int start, const Path& base_loop,
                                             const Path& fiber_loop);

struct ProjectionSweep {
  std::size_t walks = 0;
  std::size_t cases = 0;
  std::size_t mismatches = 0;
  // First few mismatches, human readable.
  std::vector<std::string> failures;
};

// Enumerates every walk of length <= max_total from every bundle vertex,
// buckets them by projection pair, and for each pair meeting the
// hypotheses of count_walks_with_projections compares the bucket size,
// the shuffle enumeration and the binomial closed form.
ProjectionSweep verify_projection_counts(const Bundle& b, int max_total);

struct UnbalancedLoop {
  int base_vertex = 0;
  int length = 0;
  Path witness;
  Permutation holonomy;
};

// Breadth-first search over (vertex, accumulated transport) states from
// (s, id). Absent when every loop at s is balanced. Throws ResourceError
// past `state_cap` states.
std::optional<UnbalancedLoop> shortest_unbalanced_loop(
    const Connection& c, int s, std::size_t state_cap = 1000000);

// Minimises over all base vertices; ties go to the smallest vertex.
std::optional<UnbalancedLoop> minimal_unbalanced_loop(
    const Connection& c, std::size_t state_cap = 1000000);

// Closed-walk counts at a vertex over the shortest unbalanced loop that tell
// a non-trivial bundle apart from the product, and the null section apart
// from the rest.
struct SeparationReport {
  int x0 = 0;
  int v0 = 0;
  int m = 0;
  Path witness;
  Permutation witness_holonomy;

  // Closed walks of length m at (x0, v0).
  BigInt bundle_count;
  BigInt product_count;
  // Split by whether the base projection has full length m.
  BigInt bundle_full_base;
  BigInt product_full_base;
  BigInt bundle_short_base;
  BigInt product_short_base;
  bool strictly_fewer = false;

  std::optional<int> null_element;
  std::optional<BigInt> null_count;
  bool null_count_differs = false;
};

// Throws HypothesisError for a trivial connection.
SeparationReport separation_report(const Bundle& b);

}  // namespace gbundle
