#include "gbundle/permutation.hpp"

#include <numeric>
#include <sstream>

#include "gbundle/error.hpp"
#include "gbundle/graph.hpp"

namespace gbundle {

Permutation::Permutation(std::vector<int> image) : image_(std::move(image)) {
  std::vector<char> hit(image_.size(), 0);
  for (int v : image_) {
    if (v < 0 || v >= size() || hit[v]) {
      throw Error(ErrorKind::kInvalidParameter,
                  "image array is not a permutation of 0.." +
                      std::to_string(size() - 1));
    }
    hit[v] = 1;
  }
}

Permutation Permutation::identity(int n) {
  Permutation p;
  p.image_.resize(n);
  std::iota(p.image_.begin(), p.image_.end(), 0);
  return p;
}

Permutation Permutation::from_cycles(
    int n, const std::vector<std::vector<int>>& cycles) {
  std::vector<int> image(n);
  std::iota(image.begin(), image.end(), 0);
  std::vector<char> used(n, 0);
  for (const auto& cycle : cycles) {
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      int a = cycle[k];
      if (a < 0 || a >= n || used[a]) {
        throw Error(ErrorKind::kInvalidParameter,
                    "cycles must be disjoint and within 0.." +
                        std::to_string(n - 1));
      }
      used[a] = 1;
      image[a] = cycle[(k + 1) % cycle.size()];
    }
  }
  return Permutation(std::move(image));
}

Permutation Permutation::inverse() const {
  Permutation p;
  p.image_.resize(image_.size());
  for (int v = 0; v < size(); ++v) p.image_[image_[v]] = v;
  return p;
}

bool Permutation::is_identity() const {
  for (int v = 0; v < size(); ++v)
    if (image_[v] != v) return false;
  return true;
}

std::vector<int> Permutation::fixed_points() const {
  std::vector<int> out;
  for (int v = 0; v < size(); ++v)
    if (image_[v] == v) out.push_back(v);
  return out;
}

long long Permutation::order() const {
  long long result = 1;
  std::vector<char> seen(image_.size(), 0);
  for (int v = 0; v < size(); ++v) {
    if (seen[v]) continue;
    long long len = 0;
    for (int w = v; !seen[w]; w = image_[w]) {
      seen[w] = 1;
      ++len;
    }
    result = std::lcm(result, len);
  }
  return result;
}

bool Permutation::is_automorphism_of(const Graph& g) const {
  if (size() != g.vertex_count()) return false;
  // Bijective and maps edges to edges; edge counts match so this suffices.
  for (int u = 0; u < g.vertex_count(); ++u)
    for (int v : g.neighbors(u))
      if (!g.adjacent(image_[u], image_[v])) return false;
  return true;
}

std::string Permutation::to_cycle_string() const {
  std::ostringstream os;
  std::vector<char> seen(image_.size(), 0);
  bool any = false;
  for (int v = 0; v < size(); ++v) {
    if (seen[v] || image_[v] == v) continue;
    any = true;
    os << '(';
    for (int w = v; !seen[w]; w = image_[w]) {
      if (w != v) os << ' ';
      os << w;
      seen[w] = 1;
    }
    os << ')';
  }
  return any ? os.str() : "()";
}

Permutation operator*(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorKind::kInvalidParameter,
                "cannot compose permutations of different sizes");
  }
  Permutation p;
  p.image_.resize(a.image_.size());
  for (int v = 0; v < a.size(); ++v) p.image_[v] = a.image_[b.image_[v]];
  return p;
}

std::size_t PermutationHash::operator()(const Permutation& p) const noexcept {
  // FNV-1a over the image array.
  std::size_t h = 1469598103934665603ull;
  for (int v : p.image()) {
    h ^= static_cast<std::size_t>(v);
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace gbundle
