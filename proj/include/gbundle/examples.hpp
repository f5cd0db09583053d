#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gbundle/bundle.hpp"
#include "gbundle/graph.hpp"

namespace gbundle {

// Base Z_n, fiber Z_4; the edge 0 -> 1 swaps 0,1 and 2,3.
Connection make_dvb1(int n);
// Base Z_n, fiber K_m; the edge 0 -> 1 carries the cycle 1 -> 2 -> ... -> m-1.
Connection make_eg2(int n, int m);
// Base Z_n, fiber K_{i(i+1)/2}; the edge 0 -> 1 carries disjoint cycles of
// lengths 2, 3, ..., i on consecutive points starting at 1.
Connection make_eg3(int n, int i);
// Base Cayley(Z_N x Z_N, {(1,0), (0,1), (1,1)}), fiber K_2, swap on every
// diagonal edge. N must be even and at least 4.
Connection make_dvb2_torus(int N);

// Fiber reflection j -> 3 - j applied in every fiber of the dvb1 bundle, as
// an image array over flat ids.
std::vector<int> dvb1_tau(int n);

// Cayley(Z_N x Z_N x Z_2, {(1,0,0), (0,1,0), (1,1,1), (0,0,1)}).
Graph dvb2_cayley_target(int N);

struct ExpectedProperties {
  std::optional<bool> trivial;
  std::optional<bool> dvb;
  std::optional<bool> transitive;
  std::optional<int> orbits;
  std::optional<bool> s_ricci_flat;
  std::optional<bool> four_loops_balanced;
};

struct ExampleSpec {
  // dvb1, eg2, eg3, dvb2-torus or product.
  std::string name;
  // n, m, i, N as applicable. product takes n (cycle) and m (complete).
  std::map<std::string, int> params;

  // e.g. "eg2_5_3"
  std::string slug() const;
};

// Throws Error(kInvalidParameter) for unknown names, missing parameters or
// out-of-range values.
Connection make_example(const ExampleSpec& spec);

struct CatalogEntry {
  ExampleSpec spec;
  ExpectedProperties expected;
};

const std::vector<CatalogEntry>& catalog();

// Expected properties for a spec when it appears in the catalog.
std::optional<ExpectedProperties> expected_properties(const ExampleSpec& spec);

}  // namespace gbundle
