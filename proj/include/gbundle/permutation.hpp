#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace gbundle {

class Graph;

// A bijection on 0..size-1, stored as its image array. Used both for fiber
// automorphisms (connection values) and for vertex permutations of whole
// graphs.
class Permutation {
 public:
  Permutation() = default;

  // Throws Error(kInvalidParameter) unless `image` is a bijection.
  explicit Permutation(std::vector<int> image);

  static Permutation identity(int n);

  // Cycles are read literally: {a, b, c} sends a->b, b->c, c->a.
  static Permutation from_cycles(int n,
                                 const std::vector<std::vector<int>>& cycles);

  int size() const { return static_cast<int>(image_.size()); }
  int operator()(int v) const { return image_[v]; }
  const std::vector<int>& image() const { return image_; }

  Permutation inverse() const;
  bool is_identity() const;
  std::vector<int> fixed_points() const;
  // Order of the permutation in its cyclic group.
  long long order() const;

  // u ~ v iff p(u) ~ p(v), for all pairs.
  bool is_automorphism_of(const Graph& g) const;

  // Cycle notation, fixed points omitted, "()" for the identity.
  std::string to_cycle_string() const;

  // (a * b)(v) = a(b(v)): b is applied first.
  friend Permutation operator*(const Permutation& a, const Permutation& b);

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> image_;
};

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept;
};

}  // namespace gbundle
