#include "gbundle/walks.hpp"

#include <deque>
#include <functional>
#include <map>
#include <set>
#include <unordered_map>

#include "gbundle/error.hpp"

namespace gbundle {

namespace {

void require_vertex(const Graph& g, int v, const char* what) {
  if (v < 0 || v >= g.vertex_count()) {
    throw Error(ErrorKind::kInvalidParameter,
                std::string(what) + " " + std::to_string(v) + " out of range");
  }
}

std::vector<BigInt> walk_step(const Graph& g, const std::vector<BigInt>& vec) {
  std::vector<BigInt> next(vec.size());
  for (int u = 0; u < g.vertex_count(); ++u) {
    if (vec[u] == 0) continue;
    for (int w : g.neighbors(u)) next[w] += vec[u];
  }
  return next;
}

// Bundle restricted to the edges that change the base coordinate.
Graph base_step_graph(const Bundle& b) {
  std::vector<std::vector<int>> adj(b.total().vertex_count());
  for (int x = 0; x < b.base().vertex_count(); ++x)
    for (int v = 0; v < b.fiber().vertex_count(); ++v)
      for (int y : b.base().neighbors(x))
        adj[b.index(x, v)].push_back(
            b.index(y, b.connection().transport(x, y)(v)));
  return Graph::from_adjacency(std::move(adj));
}

}  // namespace

ProjectionPair project_product(const Graph& g, const Graph& f,
                               const Path& walk) {
  const int nf = f.vertex_count();
  if (walk.vertices.empty()) {
    throw Error(ErrorKind::kInvalidPath, "a walk needs at least one vertex");
  }
  std::vector<int> xs, vs;
  for (std::size_t i = 0; i < walk.vertices.size(); ++i) {
    const int id = walk.vertices[i];
    if (id < 0 || id >= g.vertex_count() * nf) {
      throw Error(ErrorKind::kInvalidPath,
                  "vertex " + std::to_string(id) + " out of range");
    }
    xs.push_back(id / nf);
    vs.push_back(id % nf);
    if (i == 0) continue;
    const int x = xs[i - 1], y = xs[i], v = vs[i - 1], w = vs[i];
    const bool step = (x == y && f.adjacent(v, w)) || (v == w && g.adjacent(x, y));
    if (!step) {
      throw Error(ErrorKind::kInvalidPath,
                  "step " + std::to_string(i - 1) + " is not a product edge");
    }
  }
  return {deduplicate(xs), deduplicate(vs)};
}

ProjectionPair project_bundle(const Bundle& b, const Path& walk) {
  require_walk(b.total(), walk);
  const Connection& c = b.connection();
  std::vector<int> xs, ws;
  Permutation acc = Permutation::identity(b.fiber().vertex_count());
  for (std::size_t i = 0; i < walk.vertices.size(); ++i) {
    auto [x, v] = b.coordinates(walk.vertices[i]);
    if (i > 0) acc = c.transport(xs.back(), x) * acc;
    xs.push_back(x);
    ws.push_back(acc.inverse()(v));
  }
  return {deduplicate(xs), deduplicate(ws)};
}

BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

BigInt closed_walk_count(const Graph& g, int v, int length) {
  require_vertex(g, v, "vertex");
  if (length < 0) {
    throw Error(ErrorKind::kInvalidParameter, "walk length must be >= 0");
  }
  std::vector<BigInt> vec(g.vertex_count());
  vec[v] = 1;
  for (int step = 0; step < length; ++step) vec = walk_step(g, vec);
  return vec[v];
}

std::vector<BigInt> closed_walk_counts(const Graph& g, int length) {
  std::vector<BigInt> out;
  out.reserve(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v)
    out.push_back(closed_walk_count(g, v, length));
  return out;
}

ProjectionCount count_walks_with_projections(const Bundle& b, int start,
                                             const Path& base_loop,
                                             const Path& fiber_path) {
  require_vertex(b.total(), start, "start vertex");
  const auto [x, v] = b.coordinates(start);
  const Connection& c = b.connection();
  require_loop(b.base(), base_loop);
  require_walk(b.fiber(), fiber_path);
  if (base_loop.front() != x) {
    throw Error(ErrorKind::kInvalidPath, "base loop must start at " +
                                             std::to_string(x));
  }
  if (fiber_path.front() != v) {
    throw Error(ErrorKind::kInvalidPath, "fiber path must start at " +
                                             std::to_string(v));
  }
  const int expected_end = holonomy(c, base_loop).inverse()(v);
  if (fiber_path.back() != expected_end) {
    throw Error(ErrorKind::kInvalidPath,
                "fiber path must end at hol^-1(v) = " +
                    std::to_string(expected_end) + ", ends at " +
                    std::to_string(fiber_path.back()));
  }

  const int m = base_loop.length();
  const int n = fiber_path.length();
  ProjectionCount result;
  result.closed_form = binomial(m + n, n);
  if (result.closed_form > 1000000) {
    throw ResourceError("shuffle_cap",
                        "more than 10^6 interleavings to enumerate");
  }

  const ProjectionPair target{base_loop, fiber_path};
  std::set<std::vector<int>> walks;
  std::vector<int> walk{start};
  std::function<void(int, int, const Permutation&)> shuffle =
      [&](int bi, int fi, const Permutation& acc) {
        if (bi == m && fi == n) {
          Path p{walk};
          if (project_bundle(b, p) == target) walks.insert(walk);
          return;
        }
        if (bi < m) {
          const int from = base_loop.vertices[bi];
          const int to = base_loop.vertices[bi + 1];
          Permutation next = c.transport(from, to) * acc;
          walk.push_back(b.index(to, next(fiber_path.vertices[fi])));
          shuffle(bi + 1, fi, next);
          walk.pop_back();
        }
        if (fi < n) {
          walk.push_back(b.index(base_loop.vertices[bi],
                                 acc(fiber_path.vertices[fi + 1])));
          shuffle(bi, fi + 1, acc);
          walk.pop_back();
        }
      };
  shuffle(0, 0, Permutation::identity(b.fiber().vertex_count()));
  result.enumerated = walks.size();
  return result;
}

ProjectionCount count_walks_with_projections(const Graph& g, const Graph& f,
                                             int start, const Path& base_loop,
                                             const Path& fiber_loop) {
  if (!fiber_loop.closed()) {
    throw Error(ErrorKind::kInvalidLoop, "fiber projection must be a loop");
  }
  return count_walks_with_projections(Bundle(identity_connection(g, f)), start,
                                      base_loop, fiber_loop);
}

std::optional<UnbalancedLoop> shortest_unbalanced_loop(const Connection& c,
                                                       int s,
                                                       std::size_t state_cap) {
  const Graph& g = c.base();
  require_vertex(g, s, "base vertex");
  struct State {
    int vertex;
    Permutation acc;
    int parent;
    int depth;
  };
  std::vector<State> states;
  std::vector<std::unordered_map<Permutation, int, PermutationHash>> seen(
      g.vertex_count());
  states.push_back({s, Permutation::identity(c.fiber().vertex_count()), -1, 0});
  seen[s].emplace(states[0].acc, 0);

  for (std::size_t k = 0; k < states.size(); ++k) {
    const int x = states[k].vertex;
    for (int y : g.neighbors(x)) {
      Permutation next = c.transport(x, y) * states[k].acc;
      if (y == s && !next.is_identity()) {
        UnbalancedLoop loop;
        loop.base_vertex = s;
        loop.length = states[k].depth + 1;
        loop.holonomy = std::move(next);
        std::vector<int> rev{s};
        for (int j = static_cast<int>(k); j >= 0; j = states[j].parent)
          rev.push_back(states[j].vertex);
        loop.witness = Path{{rev.rbegin(), rev.rend()}};
        return loop;
      }
      if (seen[y].contains(next)) continue;
      if (states.size() >= state_cap) {
        throw ResourceError("state_cap",
                            "holonomy search exceeded " +
                                std::to_string(state_cap) + " states");
      }
      seen[y].emplace(next, static_cast<int>(states.size()));
      states.push_back({y, std::move(next), static_cast<int>(k),
                        states[k].depth + 1});
    }
  }
  return std::nullopt;
}

std::optional<UnbalancedLoop> minimal_unbalanced_loop(const Connection& c,
                                                      std::size_t state_cap) {
  std::optional<UnbalancedLoop> best;
  for (int s = 0; s < c.base().vertex_count(); ++s) {
    auto loop = shortest_unbalanced_loop(c, s, state_cap);
    if (loop && (!best || loop->length < best->length)) best = std::move(loop);
  }
  return best;
}

SeparationReport separation_report(const Bundle& b) {
  const Connection& c = b.connection();
  auto loop = minimal_unbalanced_loop(c);
  if (!loop) {
    throw HypothesisError("non-trivial",
                          "connection is trivial: every loop is balanced");
  }
  SeparationReport r;
  r.x0 = loop->base_vertex;
  r.m = loop->length;
  r.witness = loop->witness;
  r.witness_holonomy = loop->holonomy;
  for (int v = 0; v < r.witness_holonomy.size(); ++v)
    if (r.witness_holonomy(v) != v) {
      r.v0 = v;
      break;
    }

  const int at = b.index(r.x0, r.v0);
  const Graph product = cartesian_product(b.base(), b.fiber());
  r.bundle_count = closed_walk_count(b.total(), at, r.m);
  r.product_count = closed_walk_count(product, at, r.m);
  r.bundle_full_base = closed_walk_count(base_step_graph(b), at, r.m);
  r.product_full_base = closed_walk_count(b.base(), r.x0, r.m);
  r.bundle_short_base = r.bundle_count - r.bundle_full_base;
  r.product_short_base = r.product_count - r.product_full_base;
  r.strictly_fewer = r.bundle_count < r.product_count;

  auto nulls = null_elements(c);
  if (!nulls.empty()) {
    r.null_element = nulls.front();
    r.null_count = closed_walk_count(b.total(), b.index(r.x0, nulls.front()), r.m);
    r.null_count_differs = *r.null_count != r.bundle_count;
  }
  return r;
}

ProjectionSweep verify_projection_counts(const Bundle& b, int max_total) {
  if (max_total < 0) {
    throw Error(ErrorKind::kInvalidParameter, "max_total must be >= 0");
  }
  const Connection& c = b.connection();
  const Graph& total = b.total();
  ProjectionSweep sweep;
  using Key = std::pair<std::vector<int>, std::vector<int>>;

  for (int start = 0; start < total.vertex_count(); ++start) {
    const auto [x0, v0] = b.coordinates(start);
    std::map<Key, std::size_t> buckets;
    Key key{{x0}, {v0}};
    std::function<void(int, const Permutation&)> walk =
        [&](int at, const Permutation& acc) {
          ++buckets[key];
          ++sweep.walks;
          if (static_cast<int>(key.first.size() + key.second.size()) - 2 ==
              max_total)
            return;
          const auto [x, v] = b.coordinates(at);
          for (int next : total.neighbors(at)) {
            const auto [y, w] = b.coordinates(next);
            if (y == x) {
              key.second.push_back(acc.inverse()(w));
              walk(next, acc);
              key.second.pop_back();
            } else {
              key.first.push_back(y);
              walk(next, c.transport(x, y) * acc);
              key.first.pop_back();
            }
          }
        };
    walk(start, Permutation::identity(b.fiber().vertex_count()));

    for (const auto& [k, count] : buckets) {
      const Path base_loop{k.first};
      const Path fiber_path{k.second};
      if (!base_loop.closed()) continue;
      if (holonomy(c, base_loop).inverse()(v0) != fiber_path.back()) continue;
      ++sweep.cases;
      const BigInt expected =
          binomial(base_loop.length() + fiber_path.length(), fiber_path.length());
      const ProjectionCount enumerated =
          count_walks_with_projections(b, start, base_loop, fiber_path);
      if (BigInt(count) == expected && enumerated.agrees() &&
          enumerated.enumerated == expected)
        continue;
      ++sweep.mismatches;
      if (sweep.failures.size() < 5) {
        sweep.failures.push_back(
            "start " + std::to_string(start) + ", |base| " +
            std::to_string(base_loop.length()) + ", |fiber| " +
            std::to_string(fiber_path.length()) + ": walks " +
            std::to_string(count) + ", shuffles " +
            enumerated.enumerated.str() + ", binomial " + expected.str());
      }
    }
  }
  return sweep;
}

}  // namespace gbundle
