#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "gbundle/bundle.hpp"
#include "gbundle/graph.hpp"
#include "gbundle/path.hpp"
#include "gbundle/permutation.hpp"

namespace gbundle {

using BigInt = boost::multiprecision::cpp_int;

struct SymmetryOptions {
  int max_vertices = 64;
};

struct OrbitPartition {
  // Orbits are numbered in order of their smallest vertex.
  std::vector<int> orbit_of;
  int count = 0;

  std::vector<std::vector<int>> orbits() const;
};

OrbitPartition orbits_of(int n, const std::vector<Permutation>& generators);

// Aut(g) as a stabilizer chain: level k fixes base[0..k-1] pointwise and
// transversals[k] holds one coset representative per point in the orbit
// of base[k].
struct AutomorphismGroup {
  int n = 0;
  std::vector<Permutation> generators;
  std::vector<int> base;
  // Generators found while processing each level.
  std::vector<std::vector<Permutation>> level_generators;
  std::vector<std::vector<std::pair<int, Permutation>>> transversals;
  OrbitPartition orbits;

  BigInt order() const;

  // Visits every group element exactly once. Stops early when `visit`
  // returns false.
  void for_each_element(
      const std::function<bool(const Permutation&)>& visit) const;
};

// Throws ResourceError when the vertex cap is exceeded.
AutomorphismGroup automorphism_group(const Graph& g,
                                     const SymmetryOptions& options = {});
bool is_vertex_transitive(const Graph& g, const SymmetryOptions& options = {});

struct CanonicalForm {
  // labeling[v] = canonical position of vertex v.
  std::vector<int> labeling;
  // Sorted edge list of the relabeled graph.
  std::vector<std::pair<int, int>> certificate;

  std::uint64_t hash() const;
};

CanonicalForm canonical_form(const Graph& g,
                             const SymmetryOptions& options = {});

struct IsomorphismResult {
  bool isomorphic = false;
  // Maps vertices of the first graph onto vertices of the second.
  std::vector<int> witness;
};

IsomorphismResult are_isomorphic(const Graph& a, const Graph& b,
                                 const SymmetryOptions& options = {});

// Per-vertex invariant tuple (degree, closed walks of lengths 3..6) used to
// seed refinement.
std::vector<std::vector<std::uint64_t>> vertex_invariants(const Graph& g);

struct RhoAction {
  Permutation rho;
  long long order = 0;
  OrbitPartition orbits;
};

// rho(i, v) = (i + 1, transport(i -> i+1)(v)) on a bundle over a cycle
// base whose vertex i is adjacent to i +- 1. Verified edge-preserving.
// Throws Error(kInvalidParameter) for any other base.
RhoAction rho_automorphism(const Bundle& b);

// Every consecutive triple of the cyclically read loop is the unique
// shortest path between its ends. Throws for invalid or empty loops.
bool is_geodesic_like(const Graph& g, const Path& loop);

// Geodesic-like loops of length <= max_length that visit their smallest
// vertex only at the two ends, starting there. Both directions are listed.
std::vector<Path> geodesic_like_loops(const Graph& g, int max_length);

}  // namespace gbundle
