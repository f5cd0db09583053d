#include "gbundle/graph.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>

#include "gbundle/error.hpp"

namespace gbundle {

namespace {

void check_labels(std::size_t n, const std::vector<std::string>& labels) {
  if (!labels.empty() && labels.size() != n) {
    throw Error(ErrorKind::kInvalidGraph,
                "label count " + std::to_string(labels.size()) +
                    " does not match vertex count " + std::to_string(n));
  }
}

}  // namespace

Graph::Graph(int n, std::span<const std::pair<int, int>> edges,
             std::vector<std::string> labels)
    : adj_(n < 0 ? 0 : n), labels_(std::move(labels)) {
  if (n < 0) throw Error(ErrorKind::kInvalidGraph, "negative vertex count");
  check_labels(adj_.size(), labels_);
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw Error(ErrorKind::kInvalidGraph,
                  "edge (" + std::to_string(u) + "," + std::to_string(v) +
                      ") out of range");
    }
    if (u == v) {
      throw Error(ErrorKind::kInvalidGraph,
                  "self-loop at vertex " + std::to_string(u));
    }
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }
  for (int v = 0; v < n; ++v) {
    auto& nb = adj_[v];
    std::sort(nb.begin(), nb.end());
    if (std::adjacent_find(nb.begin(), nb.end()) != nb.end()) {
      throw Error(ErrorKind::kInvalidGraph,
                  "parallel edge at vertex " + std::to_string(v));
    }
  }
  edge_count_ = edges.size();
}

Graph Graph::from_adjacency(std::vector<std::vector<int>> adjacency,
                            std::vector<std::string> labels) {
  ValidationReport report = validate(adjacency);
  if (!report.simple || !report.symmetric) {
    throw Error(ErrorKind::kInvalidGraph,
                report.findings.empty() ? "invalid adjacency"
                                        : report.findings.front());
  }
  check_labels(adjacency.size(), labels);
  Graph g;
  std::size_t degree_sum = 0;
  for (auto& nb : adjacency) {
    std::sort(nb.begin(), nb.end());
    degree_sum += nb.size();
  }
  g.adj_ = std::move(adjacency);
  g.labels_ = std::move(labels);
  g.edge_count_ = degree_sum / 2;
  return g;
}

bool Graph::adjacent(int u, int v) const {
  if (u < 0 || v < 0 || u >= vertex_count() || v >= vertex_count())
    return false;
  const auto& nb = adj_[u];
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::optional<int> Graph::regular_degree() const {
  if (adj_.empty()) return std::nullopt;
  const int d = degree(0);
  for (int v = 1; v < vertex_count(); ++v)
    if (degree(v) != d) return std::nullopt;
  return d;
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(edge_count_);
  for (int u = 0; u < vertex_count(); ++u)
    for (int v : adj_[u])
      if (u < v) out.emplace_back(u, v);
  return out;
}

std::vector<OrientedEdge> Graph::oriented_edges() const {
  std::vector<OrientedEdge> out;
  out.reserve(2 * edge_count_);
  for (int u = 0; u < vertex_count(); ++u)
    for (int v : adj_[u]) out.push_back({u, v});
  return out;
}

std::string Graph::label(int v) const {
  return labels_.empty() ? std::to_string(v) : labels_[v];
}

Graph Graph::with_labels(std::vector<std::string> labels) const {
  check_labels(adj_.size(), labels);
  Graph g = *this;
  g.labels_ = std::move(labels);
  return g;
}

ValidationReport validate(const std::vector<std::vector<int>>& adjacency) {
  ValidationReport report;
  const int n = static_cast<int>(adjacency.size());
  std::vector<std::set<int>> sets(n);
  for (int v = 0; v < n; ++v) {
    for (int w : adjacency[v]) {
      if (w < 0 || w >= n) {
        report.simple = false;
        report.findings.push_back("vertex " + std::to_string(v) +
                                  " has out-of-range neighbor " +
                                  std::to_string(w));
        continue;
      }
      if (w == v) {
        report.simple = false;
        report.findings.push_back("self-loop at vertex " + std::to_string(v));
      }
      if (!sets[v].insert(w).second) {
        report.simple = false;
        report.findings.push_back("parallel edge " + std::to_string(v) + "-" +
                                  std::to_string(w));
      }
    }
  }
  for (int v = 0; v < n; ++v) {
    for (int w : sets[v]) {
      if (!sets[w].contains(v)) {
        report.symmetric = false;
        report.findings.push_back("edge " + std::to_string(v) + "->" +
                                  std::to_string(w) + " has no reverse");
      }
    }
  }

  // Connectivity over the symmetrized relation so that a broken adjacency
  // still gets a meaningful answer.
  if (n > 0) {
    std::vector<std::vector<int>> sym(n);
    for (int v = 0; v < n; ++v)
      for (int w : sets[v]) {
        sym[v].push_back(w);
        sym[w].push_back(v);
      }
    std::vector<char> seen(n, 0);
    std::deque<int> queue{0};
    seen[0] = 1;
    int reached = 1;
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      for (int w : sym[v])
        if (!seen[w]) {
          seen[w] = 1;
          ++reached;
          queue.push_back(w);
        }
    }
    if (reached != n) {
      report.connected = false;
      report.findings.push_back("graph is not connected: " +
                                std::to_string(reached) + " of " +
                                std::to_string(n) +
                                " vertices reachable from 0");
    }
  }

  if (n > 0 && report.simple) {
    const std::size_t d = sets[0].size();
    bool regular = std::all_of(sets.begin(), sets.end(),
                               [d](const auto& s) { return s.size() == d; });
    if (regular) report.regular_degree = static_cast<int>(d);
  }
  return report;
}

ValidationReport validate(const Graph& g) {
  std::vector<std::vector<int>> adjacency(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) {
    auto nb = g.neighbors(v);
    adjacency[v].assign(nb.begin(), nb.end());
  }
  return validate(adjacency);
}

std::vector<int> bfs_distances(const Graph& g, int source) {
  std::vector<int> dist(g.vertex_count(), -1);
  std::deque<int> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int w : g.neighbors(v))
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
  }
  return dist;
}

bool is_connected(const Graph& g) {
  if (g.vertex_count() == 0) return true;
  auto dist = bfs_distances(g, 0);
  return std::none_of(dist.begin(), dist.end(), [](int d) { return d < 0; });
}

Graph cycle_graph(int n) {
  if (n < 3) {
    throw Error(ErrorKind::kInvalidParameter,
                "cycle_graph requires n >= 3, got " + std::to_string(n));
  }
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  return Graph(n, edges);
}

Graph complete_graph(int m) {
  if (m < 2) {
    throw Error(ErrorKind::kInvalidParameter,
                "complete_graph requires m >= 2, got " + std::to_string(m));
  }
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < m; ++u)
    for (int v = u + 1; v < m; ++v) edges.emplace_back(u, v);
  return Graph(m, edges);
}

Graph cartesian_product(const Graph& g, const Graph& f) {
  const int nf = f.vertex_count();
  std::vector<std::vector<int>> adj(g.vertex_count() * nf);
  std::vector<std::string> labels(adj.size());
  for (int x = 0; x < g.vertex_count(); ++x) {
    for (int v = 0; v < nf; ++v) {
      auto& nb = adj[x * nf + v];
      for (int y : g.neighbors(x)) nb.push_back(y * nf + v);
      for (int w : f.neighbors(v)) nb.push_back(x * nf + w);
      labels[x * nf + v] =
          "(" + std::to_string(x) + "," + std::to_string(v) + ")";
    }
  }
  return Graph::from_adjacency(std::move(adj), std::move(labels));
}

Graph permute_vertices(const Graph& g, std::span<const int> image) {
  const int n = g.vertex_count();
  if (static_cast<int>(image.size()) != n) {
    throw Error(ErrorKind::kInvalidParameter, "relabeling has wrong size");
  }
  std::vector<std::vector<int>> adj(n);
  std::vector<char> hit(n, 0);
  for (int v = 0; v < n; ++v) {
    int iv = image[v];
    if (iv < 0 || iv >= n || hit[iv]) {
      throw Error(ErrorKind::kInvalidParameter, "relabeling is not a bijection");
    }
    hit[iv] = 1;
    for (int w : g.neighbors(v)) adj[iv].push_back(image[w]);
  }
  std::vector<std::string> labels;
  if (g.has_labels()) {
    labels.resize(n);
    for (int v = 0; v < n; ++v) labels[image[v]] = g.labels()[v];
  }
  return Graph::from_adjacency(std::move(adj), std::move(labels));
}

AbelianGroup::AbelianGroup(std::vector<int> orders) : orders_(std::move(orders)) {
  if (orders_.empty()) {
    throw Error(ErrorKind::kInvalidParameter, "group needs at least one factor");
  }
  for (int o : orders_) {
    if (o < 1) {
      throw Error(ErrorKind::kInvalidParameter,
                  "cyclic factor order must be positive, got " +
                      std::to_string(o));
    }
    size_ *= o;
  }
}

int AbelianGroup::index_of(const Element& g) const {
  int index = 0;
  for (int k = 0; k < rank(); ++k) index = index * orders_[k] + g[k];
  return index;
}

AbelianGroup::Element AbelianGroup::element(int index) const {
  Element g(rank());
  for (int k = rank() - 1; k >= 0; --k) {
    g[k] = index % orders_[k];
    index /= orders_[k];
  }
  return g;
}

AbelianGroup::Element AbelianGroup::reduce(const Element& a) const {
  if (static_cast<int>(a.size()) != rank()) {
    throw Error(ErrorKind::kInvalidParameter,
                "group element has " + std::to_string(a.size()) +
                    " coordinates, expected " + std::to_string(rank()));
  }
  Element r(rank());
  for (int k = 0; k < rank(); ++k)
    r[k] = ((a[k] % orders_[k]) + orders_[k]) % orders_[k];
  return r;
}

AbelianGroup::Element AbelianGroup::add(const Element& a,
                                        const Element& b) const {
  Element r(rank());
  for (int k = 0; k < rank(); ++k) r[k] = (a[k] + b[k]) % orders_[k];
  return r;
}

AbelianGroup::Element AbelianGroup::negate(const Element& a) const {
  Element r(rank());
  for (int k = 0; k < rank(); ++k) r[k] = (orders_[k] - a[k]) % orders_[k];
  return r;
}

bool AbelianGroup::is_identity(const Element& a) const {
  return std::all_of(a.begin(), a.end(), [](int c) { return c == 0; });
}

std::vector<AbelianGroup::Element> symmetric_generators(
    const AbelianGroup& group,
    const std::vector<AbelianGroup::Element>& generators) {
  std::set<AbelianGroup::Element> out;
  for (const auto& raw : generators) {
    auto g = group.reduce(raw);
    out.insert(g);
    out.insert(group.negate(g));
  }
  return {out.begin(), out.end()};
}

Graph cayley_graph(const std::vector<int>& orders,
                   const std::vector<AbelianGroup::Element>& generators) {
  AbelianGroup group(orders);
  auto gens = symmetric_generators(group, generators);
  for (const auto& g : gens) {
    if (group.is_identity(g)) {
      throw Error(ErrorKind::kInvalidGraph,
                  "identity generator would create a self-loop");
    }
  }
  std::vector<std::vector<int>> adj(group.size());
  std::vector<std::string> labels(group.size());
  for (int i = 0; i < group.size(); ++i) {
    auto elem = group.element(i);
    for (const auto& s : gens) adj[i].push_back(group.index_of(group.add(elem, s)));
    std::ostringstream os;
    os << '(';
    for (int k = 0; k < group.rank(); ++k) os << (k ? "," : "") << elem[k];
    os << ')';
    labels[i] = group.rank() == 1 ? std::to_string(elem[0]) : os.str();
  }
  Graph g = Graph::from_adjacency(std::move(adj));
  if (!is_connected(g)) {
    throw Error(ErrorKind::kDisconnected,
                "generators do not generate the group (Cayley graph is "
                "disconnected)");
  }
  // Cyclic groups keep unlabeled vertices so Z/n with {+-1} is literally
  // cycle_graph(n).
  return group.rank() == 1 ? g : g.with_labels(std::move(labels));
}

}  // namespace gbundle
