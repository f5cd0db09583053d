#include "gbundle/bundle.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "gbundle/error.hpp"
#include "gbundle/symmetry.hpp"

namespace gbundle {

namespace {

std::string edge_name(int x, int y) {
  return "(" + std::to_string(x) + "," + std::to_string(y) + ")";
}

struct SpanningTree {
  std::vector<int> parent;  // -1 at the root
  std::vector<int> order;   // BFS order
};

SpanningTree bfs_tree(const Graph& g, int root) {
  SpanningTree tree;
  tree.parent.assign(g.vertex_count(), -2);
  tree.parent[root] = -1;
  std::deque<int> queue{root};
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    tree.order.push_back(v);
    for (int w : g.neighbors(v))
      if (tree.parent[w] == -2) {
        tree.parent[w] = v;
        queue.push_back(w);
      }
  }
  return tree;
}

std::vector<int> path_from_root(const SpanningTree& tree, int v) {
  std::vector<int> path;
  for (int w = v; w != -1; w = tree.parent[w]) path.push_back(w);
  std::reverse(path.begin(), path.end());
  return path;
}

void require_connected_base(const Connection& c) {
  if (c.base().vertex_count() == 0 || !is_connected(c.base())) {
    throw Error(ErrorKind::kDisconnected, "base graph must be connected");
  }
}

}  // namespace

Connection::Connection(Graph base, Graph fiber,
                       const std::vector<Assignment>& assignments)
    : base_(std::move(base)),
      fiber_(std::move(fiber)),
      identity_(Permutation::identity(fiber_.vertex_count())) {
  const int n = base_.vertex_count();
  edge_ids_.resize(n);
  int next = 0;
  std::map<std::pair<int, int>, int> ids;
  for (auto [u, v] : base_.edges()) ids[{u, v}] = next++;
  for (int x = 0; x < n; ++x)
    for (int y : base_.neighbors(x))
      edge_ids_[x].push_back(ids.at({std::min(x, y), std::max(x, y)}));
  forward_.assign(next, identity_);
  backward_.assign(next, identity_);

  std::vector<char> assigned(next, 0);
  for (const auto& [edge, perm] : assignments) {
    const auto [x, y] = edge;
    if (!base_.adjacent(x, y)) {
      throw Error(ErrorKind::kInvalidConnection,
                  "oriented edge " + edge_name(x, y) + " is not in the base");
    }
    if (perm.size() != fiber_.vertex_count()) {
      throw Error(ErrorKind::kInvalidConnection,
                  "permutation on " + edge_name(x, y) + " has size " +
                      std::to_string(perm.size()) + ", fiber has " +
                      std::to_string(fiber_.vertex_count()) + " vertices");
    }
    if (!perm.is_automorphism_of(fiber_)) {
      throw Error(ErrorKind::kInvalidConnection,
                  "permutation " + perm.to_cycle_string() + " on " +
                      edge_name(x, y) + " is not a fiber automorphism");
    }
    const int id = edge_id(x, y);
    Permutation low_to_high = x < y ? perm : perm.inverse();
    if (assigned[id] && forward_[id] != low_to_high) {
      throw Error(ErrorKind::kInvalidConnection,
                  "inconsistent assignments on " + edge_name(x, y) + " and " +
                      edge_name(y, x) + ": they must be mutually inverse");
    }
    assigned[id] = 1;
    backward_[id] = low_to_high.inverse();
    forward_[id] = std::move(low_to_high);
  }
}

int Connection::edge_id(int x, int y) const {
  auto nb = base_.neighbors(x);
  auto it = std::lower_bound(nb.begin(), nb.end(), y);
  if (it == nb.end() || *it != y) {
    throw Error(ErrorKind::kInvalidPath,
                "vertices " + std::to_string(x) + " and " + std::to_string(y) +
                    " are not adjacent in the base");
  }
  return edge_ids_[x][it - nb.begin()];
}

const Permutation& Connection::transport(int x, int y) const {
  if (x == y) return identity_;
  if (x < 0 || y < 0 || x >= base_.vertex_count() ||
      y >= base_.vertex_count()) {
    throw Error(ErrorKind::kInvalidPath,
                "base vertex out of range in step " + edge_name(x, y));
  }
  const int id = edge_id(x, y);
  return x < y ? forward_[id] : backward_[id];
}

std::vector<Connection::Assignment> Connection::assignments() const {
  std::vector<Assignment> out;
  for (auto [u, v] : base_.edges()) {
    const auto& p = transport(u, v);
    if (!p.is_identity()) out.push_back({{u, v}, p});
  }
  return out;
}

Connection identity_connection(const Graph& base, const Graph& fiber) {
  return Connection(base, fiber);
}

Bundle::Bundle(Connection connection)
    : connection_(std::move(connection)),
      fiber_size_(std::max(1, connection_.fiber().vertex_count())) {
  const Graph& g = connection_.base();
  const Graph& f = connection_.fiber();
  if (g.vertex_count() == 0 || f.vertex_count() == 0 || !is_connected(g) ||
      !is_connected(f)) {
    throw Error(ErrorKind::kDisconnected,
                "bundle base and fiber must be non-empty and connected");
  }
  const int nf = f.vertex_count();
  std::vector<std::vector<int>> adj(g.vertex_count() * nf);
  std::vector<std::string> labels(adj.size());
  for (int x = 0; x < g.vertex_count(); ++x) {
    for (int v = 0; v < nf; ++v) {
      auto& nb = adj[index(x, v)];
      for (int w : f.neighbors(v)) nb.push_back(index(x, w));
      for (int y : g.neighbors(x))
        nb.push_back(index(y, connection_.transport(x, y)(v)));
      labels[index(x, v)] =
          "(" + std::to_string(x) + "," + std::to_string(v) + ")";
    }
  }
  total_ = Graph::from_adjacency(std::move(adj), std::move(labels));
}

Bundle build_bundle(Connection c) { return Bundle(std::move(c)); }

void require_walk(const Graph& g, const Path& p) {
  if (p.vertices.empty()) {
    throw Error(ErrorKind::kInvalidPath, "a walk needs at least one vertex");
  }
  for (int v : p.vertices) {
    if (v < 0 || v >= g.vertex_count()) {
      throw Error(ErrorKind::kInvalidPath,
                  "vertex " + std::to_string(v) + " out of range");
    }
  }
  for (std::size_t i = 0; i + 1 < p.vertices.size(); ++i) {
    if (!g.adjacent(p.vertices[i], p.vertices[i + 1])) {
      throw Error(ErrorKind::kInvalidPath,
                  "step " + std::to_string(i) + " " +
                      edge_name(p.vertices[i], p.vertices[i + 1]) +
                      " is not an edge");
    }
  }
}

void require_loop(const Graph& g, const Path& p) {
  require_walk(g, p);
  if (!p.closed()) {
    throw Error(ErrorKind::kInvalidLoop,
                "walk from " + std::to_string(p.front()) + " ends at " +
                    std::to_string(p.back()));
  }
}

Path deduplicate(const std::vector<int>& sequence) {
  Path p;
  for (int v : sequence)
    if (p.vertices.empty() || p.vertices.back() != v) p.vertices.push_back(v);
  return p;
}

Permutation path_transport(const Connection& c, const std::vector<int>& walk) {
  Permutation acc = Permutation::identity(c.fiber().vertex_count());
  for (std::size_t i = 0; i + 1 < walk.size(); ++i)
    acc = c.transport(walk[i], walk[i + 1]) * acc;
  return acc;
}

Permutation holonomy(const Connection& c, const Path& loop) {
  if (loop.vertices.empty()) {
    throw Error(ErrorKind::kInvalidPath, "a loop needs at least one vertex");
  }
  // transport() rejects non-adjacent distinct steps; equal consecutive
  // vertices are stationary and contribute the identity.
  Permutation h = path_transport(c, loop.vertices);
  if (!loop.closed()) {
    throw Error(ErrorKind::kInvalidLoop,
                "walk from " + std::to_string(loop.front()) + " ends at " +
                    std::to_string(loop.back()));
  }
  return h;
}

bool is_balanced(const Connection& c, const Path& loop) {
  return holonomy(c, loop).is_identity();
}

TrivialityResult is_trivial(const Connection& c) {
  require_connected_base(c);
  const Graph& g = c.base();
  SpanningTree tree = bfs_tree(g, 0);

  TrivialityResult result;
  std::vector<Permutation> rho(g.vertex_count());
  rho[0] = Permutation::identity(c.fiber().vertex_count());
  for (std::size_t k = 1; k < tree.order.size(); ++k) {
    int y = tree.order[k];
    int x = tree.parent[y];
    rho[y] = c.transport(x, y) * rho[x];
  }

  // Each non-tree edge closes one fundamental cycle; its holonomy is
  // rho_v^-1 * transport(u->v) * rho_u.
  for (auto [u, v] : g.edges()) {
    if (tree.parent[v] == u || tree.parent[u] == v) continue;
    Permutation h = rho[v].inverse() * c.transport(u, v) * rho[u];
    if (!h.is_identity()) {
      std::vector<int> loop = path_from_root(tree, u);
      std::vector<int> back = path_from_root(tree, v);
      loop.insert(loop.end(), back.rbegin(), back.rend());
      result.trivial = false;
      result.witness = Path{std::move(loop)};
      result.witness_holonomy = std::move(h);
      return result;
    }
  }
  result.trivial = true;
  result.rho = std::move(rho);
  return result;
}

std::vector<int> trivialization_isomorphism(const Connection& c) {
  TrivialityResult t = is_trivial(c);
  if (!t.trivial) {
    throw Error(ErrorKind::kNotTrivial,
                "connection is not trivial; unbalanced loop has holonomy " +
                    t.witness_holonomy.to_cycle_string());
  }
  Bundle bundle(c);
  const Graph product = cartesian_product(c.base(), c.fiber());
  const int nf = c.fiber().vertex_count();
  std::vector<int> psi(product.vertex_count());
  for (int y = 0; y < c.base().vertex_count(); ++y)
    for (int v = 0; v < nf; ++v) psi[y * nf + v] = bundle.index(y, t.rho[y](v));

  [[maybe_unused]] Permutation bijective(psi);
  for (int u = 0; u < product.vertex_count(); ++u) {
    if (bundle.project(psi[u]) != u / nf) {
      throw std::logic_error("trivialization does not commute with projection");
    }
    for (int w : product.neighbors(u))
      if (!bundle.total().adjacent(psi[u], psi[w])) {
        throw std::logic_error("trivialization is not edge-preserving");
      }
  }
  return psi;
}

std::vector<int> null_elements(const Connection& c) {
  std::vector<char> fixed(c.fiber().vertex_count(), 1);
  for (const auto& a : c.assignments())
    for (int v = 0; v < a.transport.size(); ++v)
      if (a.transport(v) != v) fixed[v] = 0;
  std::vector<int> out;
  for (int v = 0; v < static_cast<int>(fixed.size()); ++v)
    if (fixed[v]) out.push_back(v);
  return out;
}

std::vector<int> null_section(const Bundle& b, int o) {
  auto nulls = null_elements(b.connection());
  if (!std::binary_search(nulls.begin(), nulls.end(), o)) {
    throw Error(ErrorKind::kInvalidParameter,
                "fiber vertex " + std::to_string(o) + " is not a null element");
  }
  std::vector<int> section;
  for (int x = 0; x < b.base().vertex_count(); ++x)
    section.push_back(b.index(x, o));
  return section;
}

EquivalenceResult connections_equivalent(const Connection& c1,
                                         const Connection& c2,
                                         std::size_t automorphism_cap) {
  if (!(c1.base() == c2.base()) || !(c1.fiber() == c2.fiber())) {
    throw Error(ErrorKind::kInvalidParameter,
                "connections must share base and fiber graphs");
  }
  require_connected_base(c1);
  const Graph& g = c1.base();

  AutomorphismGroup aut = automorphism_group(c1.fiber());
  if (aut.order() > automorphism_cap) {
    throw ResourceError("automorphism_cap",
                        "|Aut(F)| = " + aut.order().str() +
                            " exceeds the automorphism cap of " +
                            std::to_string(automorphism_cap));
  }

  SpanningTree tree = bfs_tree(g, 0);
  EquivalenceResult result;
  std::vector<Permutation> gauge(g.vertex_count());
  aut.for_each_element([&](const Permutation& root_choice) {
    gauge[0] = root_choice;
    for (std::size_t k = 1; k < tree.order.size(); ++k) {
      int y = tree.order[k];
      int x = tree.parent[y];
      gauge[y] = c2.transport(x, y) * gauge[x] * c1.transport(x, y).inverse();
    }
    for (auto [u, v] : g.edges()) {
      if (gauge[v] * c1.transport(u, v) != c2.transport(u, v) * gauge[u])
        return true;
    }
    result.equivalent = true;
    result.gauge = gauge;
    return false;
  });
  return result;
}

}  // namespace gbundle
