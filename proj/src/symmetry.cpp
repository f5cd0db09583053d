#include "gbundle/symmetry.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

#include "gbundle/error.hpp"

namespace gbundle {

namespace {

// Partition of the vertex set as colors 0..cells-1. Colors are ranks of
// isomorphism-invariant keys, so cell order is itself invariant.
struct Coloring {
  std::vector<int> color;
  int cells = 0;
};

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  return h;
}

template <typename Key>
Coloring rank_keys(const std::vector<Key>& keys) {
  std::vector<Key> sorted = keys;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  Coloring c;
  c.cells = static_cast<int>(sorted.size());
  c.color.resize(keys.size());
  for (std::size_t v = 0; v < keys.size(); ++v)
    c.color[v] = static_cast<int>(
        std::lower_bound(sorted.begin(), sorted.end(), keys[v]) -
        sorted.begin());
  return c;
}

// Colour refinement to the coarsest equitable partition below `c`. Returns a
// hash of the signature lists seen on the way; two refinements that can be
// matched by an isomorphism produce equal traces.
std::uint64_t refine(const Graph& g, Coloring& c) {
  const int n = g.vertex_count();
  std::uint64_t trace = static_cast<std::uint64_t>(c.cells);
  std::vector<std::vector<int>> keys(n);
  while (true) {
    for (int v = 0; v < n; ++v) {
      auto& key = keys[v];
      key.clear();
      key.push_back(c.color[v]);
      for (int w : g.neighbors(v)) key.push_back(c.color[w]);
      std::sort(key.begin() + 1, key.end());
    }
    Coloring next = rank_keys(keys);
    std::vector<std::vector<int>> sorted = keys;
    std::sort(sorted.begin(), sorted.end());
    for (const auto& key : sorted)
      for (int k : key) trace = mix(trace, static_cast<std::uint64_t>(k));
    trace = mix(trace, static_cast<std::uint64_t>(next.cells));
    const bool stable = next.cells == c.cells;
    c = std::move(next);
    if (stable) return trace;
  }
}

Coloring individualize(const Coloring& c, int u) {
  std::vector<std::pair<int, int>> keys(c.color.size());
  for (std::size_t v = 0; v < keys.size(); ++v)
    keys[v] = {c.color[v], static_cast<int>(v) == u ? 0 : 1};
  return rank_keys(keys);
}

// First largest non-singleton cell, or -1 when the partition is discrete.
int target_cell(const Coloring& c) {
  if (c.cells == static_cast<int>(c.color.size())) return -1;
  std::vector<int> size(c.cells, 0);
  for (int col : c.color) ++size[col];
  int best = -1;
  for (int col = 0; col < c.cells; ++col)
    if (size[col] > 1 && (best < 0 || size[col] > size[best])) best = col;
  return best;
}

std::vector<int> cell_members(const Coloring& c, int cell) {
  std::vector<int> out;
  for (int v = 0; v < static_cast<int>(c.color.size()); ++v)
    if (c.color[v] == cell) out.push_back(v);
  return out;
}

Coloring initial_coloring(const Graph& g) {
  return rank_keys(vertex_invariants(g));
}

bool is_isomorphism(const Graph& a, const Graph& b,
                    const std::vector<int>& map) {
  if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count())
    return false;
  std::vector<char> hit(map.size(), 0);
  for (int v : map) {
    if (v < 0 || v >= b.vertex_count() || hit[v]) return false;
    hit[v] = 1;
  }
  for (int u = 0; u < a.vertex_count(); ++u)
    for (int w : a.neighbors(u))
      if (!b.adjacent(map[u], map[w])) return false;
  return true;
}

// Backtracking search for an isomorphism a -> b compatible with the two
// (already refined) colorings. Side a always individualizes its lowest
// vertex in the target cell; side b tries every vertex of that cell.
class IsomorphismSearch {
 public:
  IsomorphismSearch(const Graph& a, const Graph& b) : a_(a), b_(b) {}

  bool run(const Coloring& ca, const Coloring& cb, std::vector<int>& map) {
    const int cell = target_cell(ca);
    if (cell < 0) {
      if (target_cell(cb) >= 0) return false;
      std::vector<int> by_color(cb.color.size());
      for (std::size_t w = 0; w < cb.color.size(); ++w)
        by_color[cb.color[w]] = static_cast<int>(w);
      map.resize(ca.color.size());
      for (std::size_t v = 0; v < ca.color.size(); ++v)
        map[v] = by_color[ca.color[v]];
      return is_isomorphism(a_, b_, map);
    }
    const int u = cell_members(ca, cell).front();
    Coloring ca2 = individualize(ca, u);
    const std::uint64_t ta = refine(a_, ca2);
    for (int w : cell_members(cb, cell)) {
      Coloring cb2 = individualize(cb, w);
      if (refine(b_, cb2) != ta || cb2.cells != ca2.cells) continue;
      if (run(ca2, cb2, map)) return true;
    }
    return false;
  }

 private:
  const Graph& a_;
  const Graph& b_;
};

void require_cap(const Graph& g, const SymmetryOptions& options) {
  if (g.vertex_count() > options.max_vertices) {
    throw ResourceError("max_vertices",
                        "graph has " + std::to_string(g.vertex_count()) +
                            " vertices, symmetry cap is " +
                            std::to_string(options.max_vertices));
  }
}

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int find(int v) {
    while (parent_[v] != v) {
      parent_[v] = parent_[parent_[v]];
      v = parent_[v];
    }
    return v;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent_[b] = a;
  }

 private:
  std::vector<int> parent_;
};

// Orbit of `point` with Schreier-tree coset representatives.
std::vector<std::pair<int, Permutation>> schreier_orbit(
    int n, int point, const std::vector<const Permutation*>& gens) {
  std::vector<std::pair<int, Permutation>> orbit;
  std::vector<int> slot(n, -1);
  orbit.emplace_back(point, Permutation::identity(n));
  slot[point] = 0;
  for (std::size_t k = 0; k < orbit.size(); ++k) {
    for (const Permutation* s : gens) {
      int q = (*s)(orbit[k].first);
      if (slot[q] >= 0) continue;
      slot[q] = static_cast<int>(orbit.size());
      Permutation rep = *s * orbit[k].second;
      orbit.emplace_back(q, std::move(rep));
    }
  }
  std::sort(orbit.begin(), orbit.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  return orbit;
}

}  // namespace

std::vector<std::vector<int>> OrbitPartition::orbits() const {
  std::vector<std::vector<int>> out(count);
  for (int v = 0; v < static_cast<int>(orbit_of.size()); ++v)
    out[orbit_of[v]].push_back(v);
  return out;
}

OrbitPartition orbits_of(int n, const std::vector<Permutation>& generators) {
  UnionFind uf(n);
  for (const auto& s : generators)
    for (int v = 0; v < n; ++v) uf.unite(v, s(v));
  OrbitPartition p;
  p.orbit_of.assign(n, -1);
  std::map<int, int> ids;
  for (int v = 0; v < n; ++v) {
    auto [it, inserted] = ids.try_emplace(uf.find(v), p.count);
    if (inserted) ++p.count;
    p.orbit_of[v] = it->second;
  }
  return p;
}

std::vector<std::vector<std::uint64_t>> vertex_invariants(const Graph& g) {
  const int n = g.vertex_count();
  std::vector<std::vector<std::uint64_t>> inv(n);
  for (int v = 0; v < n; ++v)
    inv[v].push_back(static_cast<std::uint64_t>(g.degree(v)));
  if (n == 0) return inv;
  // walks[v][w] = number of walks of the current length; starts at A.
  std::vector<std::uint64_t> walks(static_cast<std::size_t>(n) * n, 0);
  for (int v = 0; v < n; ++v)
    for (int w : g.neighbors(v)) walks[v * n + w] = 1;
  std::vector<std::uint64_t> next(walks.size());
  for (int len = 2; len <= 6; ++len) {
    std::fill(next.begin(), next.end(), 0);
    for (int v = 0; v < n; ++v)
      for (int u = 0; u < n; ++u) {
        std::uint64_t s = walks[v * n + u];
        if (s == 0) continue;
        for (int w : g.neighbors(u)) next[v * n + w] += s;
      }
    walks.swap(next);
    if (len >= 3)
      for (int v = 0; v < n; ++v) inv[v].push_back(walks[v * n + v]);
  }
  return inv;
}

BigInt AutomorphismGroup::order() const {
  BigInt result = 1;
  for (const auto& t : transversals) result *= t.size();
  return result;
}

void AutomorphismGroup::for_each_element(
    const std::function<bool(const Permutation&)>& visit) const {
  const int levels = static_cast<int>(transversals.size());
  std::function<bool(int, const Permutation&)> walk =
      [&](int level, const Permutation& prefix) {
        if (level == levels) return visit(prefix);
        for (const auto& entry : transversals[level])
          if (!walk(level + 1, prefix * entry.second)) return false;
        return true;
      };
  walk(0, Permutation::identity(n));
}

AutomorphismGroup automorphism_group(const Graph& g,
                                     const SymmetryOptions& options) {
  require_cap(g, options);
  const int n = g.vertex_count();
  AutomorphismGroup group;
  group.n = n;

  // Leftmost path of the search tree; it fixes the base.
  std::vector<Coloring> colorings;
  std::vector<std::uint64_t> traces;
  Coloring c = initial_coloring(g);
  refine(g, c);
  colorings.push_back(c);
  std::vector<std::vector<int>> cells;
  while (true) {
    const int cell = target_cell(colorings.back());
    if (cell < 0) break;
    cells.push_back(cell_members(colorings.back(), cell));
    group.base.push_back(cells.back().front());
    Coloring next = individualize(colorings.back(), group.base.back());
    traces.push_back(refine(g, next));
    colorings.push_back(std::move(next));
  }

  const int levels = static_cast<int>(group.base.size());
  group.level_generators.resize(levels);
  group.transversals.resize(levels);
  IsomorphismSearch search(g, g);
  for (int k = levels - 1; k >= 0; --k) {
    auto gens_from = [&](int level) {
      std::vector<const Permutation*> out;
      for (int j = level; j < levels; ++j)
        for (const auto& s : group.level_generators[j]) out.push_back(&s);
      return out;
    };
    auto orbit = schreier_orbit(n, group.base[k], gens_from(k));
    std::set<int> in_orbit;
    for (const auto& [p, rep] : orbit) in_orbit.insert(p);

    for (int w : cells[k]) {
      if (in_orbit.contains(w)) continue;
      Coloring cw = individualize(colorings[k], w);
      if (refine(g, cw) != traces[k] || cw.cells != colorings[k + 1].cells)
        continue;
      std::vector<int> map;
      if (!search.run(colorings[k + 1], cw, map)) continue;
      Permutation s(map);
      if (!s.is_automorphism_of(g)) {
        throw std::logic_error("automorphism search produced a non-automorphism");
      }
      group.level_generators[k].push_back(std::move(s));
      orbit = schreier_orbit(n, group.base[k], gens_from(k));
      in_orbit.clear();
      for (const auto& [p, rep] : orbit) in_orbit.insert(p);
    }
    group.transversals[k] = std::move(orbit);
  }

  for (const auto& level : group.level_generators)
    for (const auto& s : level) group.generators.push_back(s);
  group.orbits = orbits_of(n, group.generators);
  return group;
}

bool is_vertex_transitive(const Graph& g, const SymmetryOptions& options) {
  return automorphism_group(g, options).orbits.count == 1;
}

std::uint64_t CanonicalForm::hash() const {
  std::uint64_t h = 1469598103934665603ull;
  auto feed = [&h](std::uint64_t v) {
    for (int byte = 0; byte < 8; ++byte) {
      h ^= (v >> (8 * byte)) & 0xff;
      h *= 1099511628211ull;
    }
  };
  feed(labeling.size());
  for (auto [u, v] : certificate) {
    feed(static_cast<std::uint64_t>(u));
    feed(static_cast<std::uint64_t>(v));
  }
  return h;
}

CanonicalForm canonical_form(const Graph& g, const SymmetryOptions& options) {
  const AutomorphismGroup group = automorphism_group(g, options);
  const int n = g.vertex_count();
  CanonicalForm best;
  bool have_best = false;

  std::function<void(const Coloring&, std::vector<int>&)> search =
      [&](const Coloring& c, std::vector<int>& prefix) {
        const int cell = target_cell(c);
        if (cell < 0) {
          std::vector<std::pair<int, int>> cert;
          cert.reserve(g.edge_count());
          for (auto [u, v] : g.edges()) {
            int a = c.color[u], b = c.color[v];
            cert.emplace_back(std::min(a, b), std::max(a, b));
          }
          std::sort(cert.begin(), cert.end());
          if (!have_best || cert < best.certificate) {
            best.certificate = std::move(cert);
            best.labeling = c.color;
            have_best = true;
          }
          return;
        }
        // Children related by an automorphism fixing the prefix root
        // isomorphic subtrees; explore one per orbit of the known ones.
        UnionFind uf(n);
        for (const auto& s : group.generators) {
          bool fixes = std::all_of(prefix.begin(), prefix.end(),
                                   [&](int p) { return s(p) == p; });
          if (!fixes) continue;
          for (int v = 0; v < n; ++v) uf.unite(v, s(v));
        }
        std::set<int> explored;
        for (int w : cell_members(c, cell)) {
          if (!explored.insert(uf.find(w)).second) continue;
          Coloring next = individualize(c, w);
          refine(g, next);
          prefix.push_back(w);
          search(next, prefix);
          prefix.pop_back();
        }
      };

  Coloring c = initial_coloring(g);
  refine(g, c);
  std::vector<int> prefix;
  search(c, prefix);
  return best;
}

IsomorphismResult are_isomorphic(const Graph& a, const Graph& b,
                                 const SymmetryOptions& options) {
  require_cap(a, options);
  require_cap(b, options);
  IsomorphismResult result;
  if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count())
    return result;
  auto ia = vertex_invariants(a);
  auto ib = vertex_invariants(b);
  std::sort(ia.begin(), ia.end());
  std::sort(ib.begin(), ib.end());
  if (ia != ib) return result;

  CanonicalForm ca = canonical_form(a, options);
  CanonicalForm cb = canonical_form(b, options);
  if (ca.certificate != cb.certificate) return result;

  const int n = a.vertex_count();
  std::vector<int> position_in_b(n);
  for (int w = 0; w < n; ++w) position_in_b[cb.labeling[w]] = w;
  result.witness.resize(n);
  for (int v = 0; v < n; ++v) result.witness[v] = position_in_b[ca.labeling[v]];
  if (!is_isomorphism(a, b, result.witness)) {
    throw std::logic_error("canonical forms agree but witness is not an isomorphism");
  }
  result.isomorphic = true;
  return result;
}

RhoAction rho_automorphism(const Bundle& b) {
  const Graph& base = b.base();
  const int n = base.vertex_count();
  bool is_cycle = n >= 3;
  for (int i = 0; is_cycle && i < n; ++i) {
    is_cycle = base.degree(i) == 2 && base.adjacent(i, (i + 1) % n);
  }
  if (!is_cycle) {
    throw Error(ErrorKind::kInvalidParameter,
                "rho is defined for bundles over the cycle Z_n with i ~ i+1");
  }
  const int nf = b.fiber().vertex_count();
  std::vector<int> image(b.total().vertex_count());
  for (int i = 0; i < n; ++i) {
    const int j = (i + 1) % n;
    const Permutation& step = b.connection().transport(i, j);
    for (int v = 0; v < nf; ++v) image[b.index(i, v)] = b.index(j, step(v));
  }
  RhoAction action;
  action.rho = Permutation(std::move(image));
  if (!action.rho.is_automorphism_of(b.total())) {
    throw std::logic_error("rho is not an automorphism of the bundle");
  }
  action.order = action.rho.order();
  action.orbits = orbits_of(b.total().vertex_count(), {action.rho});
  return action;
}

namespace {

bool unique_geodesic(const Graph& g, int a, int mid, int c) {
  if (a == c || g.adjacent(a, c)) return false;
  if (!g.adjacent(a, mid) || !g.adjacent(mid, c)) return false;
  int common = 0;
  for (int w : g.neighbors(a))
    if (g.adjacent(w, c)) ++common;
  return common == 1;
}

}  // namespace

bool is_geodesic_like(const Graph& g, const Path& loop) {
  require_loop(g, loop);
  const int len = loop.length();
  if (len == 0) {
    throw Error(ErrorKind::kInvalidLoop,
                "a geodesic-like loop needs positive length");
  }
  for (int i = 0; i < len; ++i) {
    int a = loop.vertices[i];
    int mid = loop.vertices[(i + 1) % len];
    int c = loop.vertices[(i + 2) % len];
    if (!unique_geodesic(g, a, mid, c)) return false;
  }
  return true;
}

std::vector<Path> geodesic_like_loops(const Graph& g, int max_length) {
  std::vector<Path> out;
  std::vector<int> walk;
  std::function<void(int)> extend = [&](int start) {
    const int cur = walk.back();
    if (static_cast<int>(walk.size()) - 1 >= max_length) return;
    for (int next : g.neighbors(cur)) {
      if (next < start) continue;
      if (walk.size() >= 2 &&
          !unique_geodesic(g, walk[walk.size() - 2], cur, next))
        continue;
      if (next == start) {
        if (walk.size() >= 3 && unique_geodesic(g, cur, start, walk[1])) {
          Path p{walk};
          p.vertices.push_back(start);
          out.push_back(std::move(p));
        }
        continue;
      }
      walk.push_back(next);
      extend(start);
      walk.pop_back();
    }
  };
  for (int s = 0; s < g.vertex_count(); ++s) {
    walk.assign(1, s);
    extend(s);
  }
  return out;
}

}  // namespace gbundle
