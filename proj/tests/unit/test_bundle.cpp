#include <gtest/gtest.h>

#include <random>
#include <set>

#include "gbundle/bundle.hpp"
#include "gbundle/error.hpp"
#include "gbundle/examples.hpp"
#include "gbundle/symmetry.hpp"

namespace gbundle {
namespace {

template <typename Fn>
ErrorKind kind_of(Fn fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no gbundle::Error thrown";
  return ErrorKind::kParse;
}

// Edge rule checked pair by pair against the connection.
void expect_edge_rule(const Bundle& b) {
  const Graph& g = b.base();
  const Graph& f = b.fiber();
  const int nf = f.vertex_count();
  for (int a = 0; a < b.total().vertex_count(); ++a)
    for (int c = 0; c < b.total().vertex_count(); ++c) {
      const int x = a / nf, v = a % nf, y = c / nf, w = c % nf;
      bool expected = x == y && f.adjacent(v, w);
      if (g.adjacent(x, y)) expected = expected || w == b.connection().transport(x, y)(v);
      ASSERT_EQ(b.total().adjacent(a, c), expected) << a << " " << c;
      if (b.total().adjacent(a, c))
        EXPECT_TRUE(x == y || g.adjacent(x, y));
    }
}

// Independent check that psi is a projection-preserving isomorphism.
void expect_isomorphism(const Connection& c, const std::vector<int>& psi) {
  const Graph product = cartesian_product(c.base(), c.fiber());
  const Bundle b(c);
  const int nf = c.fiber().vertex_count();
  std::set<int> image(psi.begin(), psi.end());
  ASSERT_EQ(image.size(), psi.size());
  for (std::size_t v = 0; v < psi.size(); ++v)
    EXPECT_EQ(psi[v] / nf, static_cast<int>(v) / nf);
  for (auto [u, v] : product.edges()) EXPECT_TRUE(b.total().adjacent(psi[u], psi[v]));
  EXPECT_EQ(product.edge_count(), b.total().edge_count());
}

Connection random_connection(std::mt19937& rng, const Graph& base, const Graph& fiber) {
  auto aut = automorphism_group(fiber);
  std::vector<Permutation> elements;
  aut.for_each_element([&](const Permutation& p) {
    elements.push_back(p);
    return true;
  });
  std::vector<Connection::Assignment> a;
  for (auto [x, y] : base.edges())
    if (rng() % 2) a.push_back({OrientedEdge{x, y}, elements[rng() % elements.size()]});
  return Connection(base, fiber, a);
}

TEST(Bundle, IdentityConnectionIsProduct) {
  Bundle b(identity_connection(cycle_graph(4), complete_graph(4)));
  EXPECT_EQ(b.total(), cartesian_product(cycle_graph(4), complete_graph(4)));
  EXPECT_EQ(b.total().vertex_count(), 16);
  EXPECT_EQ(b.total().regular_degree(), 5);
  Bundle prism(identity_connection(cycle_graph(3), complete_graph(2)));
  EXPECT_EQ(prism.total().vertex_count(), 6);
  EXPECT_EQ(prism.total().regular_degree(), 3);
}

TEST(Bundle, ExampleSizesAndEdgeRule) {
  Bundle fig(make_eg2(4, 4));
  EXPECT_EQ(fig.total().vertex_count(), 16);
  EXPECT_EQ(fig.total().regular_degree(), 5);
  Bundle small(make_eg2(5, 3));
  EXPECT_EQ(small.total().vertex_count(), 15);
  EXPECT_EQ(small.total().regular_degree(), 4);
  expect_edge_rule(fig);
  expect_edge_rule(small);
  expect_edge_rule(Bundle(make_dvb1(5)));
  EXPECT_EQ(small.total().label(small.index(2, 1)), "(2,1)");
}

TEST(Bundle, TransportConventions) {
  Connection c = make_eg2(5, 4);
  EXPECT_EQ(c.transport(0, 1), Permutation::from_cycles(4, {{1, 2, 3}}));
  EXPECT_EQ(c.transport(1, 0), c.transport(0, 1).inverse());
  EXPECT_TRUE(c.transport(3, 3).is_identity());
  EXPECT_EQ(kind_of([&] { c.transport(0, 2); }), ErrorKind::kInvalidPath);
  ASSERT_EQ(c.assignments().size(), 1u);
  EXPECT_EQ(c.assignments()[0].edge, (OrientedEdge{0, 1}));
}

TEST(Bundle, ConnectionValidation) {
  // (0 1) does not preserve the 4-cycle.
  EXPECT_EQ(kind_of([] {
              Connection(cycle_graph(5), cycle_graph(4),
                         {{OrientedEdge{0, 1}, Permutation::from_cycles(4, {{0, 1}})}});
            }),
            ErrorKind::kInvalidConnection);
  EXPECT_EQ(kind_of([] {
              Connection(cycle_graph(5), complete_graph(3),
                         {{OrientedEdge{0, 2}, Permutation::identity(3)}});
            }),
            ErrorKind::kInvalidConnection);
  EXPECT_EQ(kind_of([] {
              Connection(cycle_graph(5), complete_graph(3),
                         {{OrientedEdge{0, 1}, Permutation::identity(4)}});
            }),
            ErrorKind::kInvalidConnection);
  // Both orientations given, not inverse to each other.
  const Permutation p = Permutation::from_cycles(3, {{0, 1, 2}});
  EXPECT_EQ(kind_of([&] {
              Connection(cycle_graph(5), complete_graph(3),
                         {{OrientedEdge{0, 1}, p}, {OrientedEdge{1, 0}, p}});
            }),
            ErrorKind::kInvalidConnection);
  // Consistent pair is accepted.
  Connection ok(cycle_graph(5), complete_graph(3),
                {{OrientedEdge{0, 1}, p}, {OrientedEdge{1, 0}, p.inverse()}});
  EXPECT_EQ(ok.transport(0, 1), p);
}

TEST(Bundle, RequiresConnectedPieces) {
  std::vector<std::pair<int, int>> e{{0, 1}, {2, 3}};
  Graph split(4, e);
  EXPECT_EQ(kind_of([&] { Bundle(identity_connection(split, complete_graph(2))); }),
            ErrorKind::kDisconnected);
}

TEST(Bundle, Holonomy) {
  Connection c = make_eg2(5, 3);
  Path loop{{0, 1, 2, 3, 4, 0}};
  Permutation h = holonomy(c, loop);
  EXPECT_EQ(h, Permutation::from_cycles(3, {{1, 2}}));
  EXPECT_TRUE((holonomy(c, loop.reversed()) * h).is_identity());
  EXPECT_FALSE(is_balanced(c, loop));
  EXPECT_TRUE(is_balanced(c, Path{{3}}));
  EXPECT_TRUE(is_balanced(c, Path{{0, 1, 0}}));
  // Stationary steps contribute nothing.
  EXPECT_EQ(holonomy(c, Path{{0, 0, 1, 1, 2, 3, 4, 4, 0}}), h);
  EXPECT_EQ(kind_of([&] { holonomy(c, Path{{0, 2, 0}}); }), ErrorKind::kInvalidPath);
  EXPECT_EQ(kind_of([&] { holonomy(c, Path{{0, 1, 2}}); }), ErrorKind::kInvalidLoop);
  Connection id = identity_connection(cycle_graph(5), complete_graph(3));
  EXPECT_TRUE(holonomy(id, loop).is_identity());
}

TEST(Bundle, HolonomyIsHomomorphism) {
  std::mt19937 rng(3);
  const Graph base = cayley_graph({3, 3}, {{1, 0}, {0, 1}});
  for (int trial = 0; trial < 40; ++trial) {
    Connection c = random_connection(rng, base, complete_graph(3));
    const auto dist = bfs_distances(base, 0);
    // Random walk out, then straight back down the distance layers.
    auto random_loop = [&](int len) {
      std::vector<int> w{0};
      for (int k = 0; k < len; ++k) {
        auto nb = base.neighbors(w.back());
        w.push_back(nb[rng() % nb.size()]);
      }
      while (w.back() != 0)
        for (int y : base.neighbors(w.back()))
          if (dist[y] < dist[w.back()]) {
            w.push_back(y);
            break;
          }
      return w;
    };
    auto l1 = random_loop(1 + trial % 5);
    std::vector<int> l2 = {0, 1, 2, 0};  // wraps the Z_3 factor
    std::vector<int> joined = l1;
    joined.insert(joined.end(), l2.begin() + 1, l2.end());
    EXPECT_EQ(holonomy(c, Path{joined}), holonomy(c, Path{l2}) * holonomy(c, Path{l1}));
    joined = l2;
    joined.insert(joined.end(), l1.begin() + 1, l1.end());
    EXPECT_EQ(holonomy(c, Path{joined}), holonomy(c, Path{l1}) * holonomy(c, Path{l2}));
  }
}

TEST(Bundle, TrivialityOfExamples) {
  TrivialityResult id = is_trivial(identity_connection(cycle_graph(5), complete_graph(3)));
  EXPECT_TRUE(id.trivial);
  for (const auto& r : id.rho) EXPECT_TRUE(r.is_identity());
  TrivialityResult eg2 = is_trivial(make_eg2(5, 3));
  EXPECT_FALSE(eg2.trivial);
  EXPECT_EQ(eg2.witness.vertices, (std::vector<int>{0, 1, 2, 3, 4, 0}));
  EXPECT_FALSE(eg2.witness_holonomy.is_identity());
  EXPECT_EQ(kind_of([] { trivialization_isomorphism(make_eg2(5, 3)); }),
            ErrorKind::kNotTrivial);
}

TEST(Bundle, CancellingTwistsAreTrivial) {
  const Permutation s = Permutation::from_cycles(3, {{1, 2}});
  Connection c(cycle_graph(4), complete_graph(3),
               {{OrientedEdge{0, 1}, s}, {OrientedEdge{2, 3}, s}});
  TrivialityResult t = is_trivial(c);
  ASSERT_TRUE(t.trivial);
  std::set<std::vector<int>> distinct;
  for (const auto& r : t.rho) distinct.insert(r.image());
  EXPECT_GT(distinct.size(), 1u);
  std::vector<int> psi = trivialization_isomorphism(c);
  expect_isomorphism(c, psi);
}

TEST(Bundle, RandomTrivialConnectionsHaveIsomorphisms) {
  std::mt19937 rng(17);
  int trivial_seen = 0;
  for (int trial = 0; trial < 60; ++trial) {
    // Trees only carry trivial connections; add edges to a path sometimes.
    std::vector<std::pair<int, int>> e{{0, 1}, {1, 2}, {2, 3}, {3, 4}};
    if (trial % 3 == 0) e.push_back({0, 4});
    Graph base(5, e);
    Connection c = random_connection(rng, base, cycle_graph(4));
    TrivialityResult t = is_trivial(c);
    if (!t.trivial) {
      EXPECT_FALSE(holonomy(c, t.witness).is_identity());
      continue;
    }
    ++trivial_seen;
    expect_isomorphism(c, trivialization_isomorphism(c));
  }
  EXPECT_GT(trivial_seen, 30);
}

TEST(Bundle, NullElements) {
  Connection id = identity_connection(cycle_graph(5), complete_graph(3));
  EXPECT_EQ(null_elements(id), (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(null_elements(make_eg2(5, 4)), (std::vector<int>{0}));
  EXPECT_TRUE(null_elements(make_dvb1(5)).empty());
  Bundle b(make_eg2(5, 3));
  EXPECT_EQ(null_section(b, 0), (std::vector<int>{0, 3, 6, 9, 12}));
  EXPECT_EQ(kind_of([&] { null_section(b, 1); }), ErrorKind::kInvalidParameter);
}

TEST(Bundle, GaugeEquivalence) {
  Connection c = make_eg2(5, 3);
  EquivalenceResult self = connections_equivalent(c, c);
  ASSERT_TRUE(self.equivalent);
  Connection id = identity_connection(cycle_graph(5), complete_graph(3));
  EXPECT_FALSE(connections_equivalent(c, id).equivalent);

  // Twist moved to another edge: gauge-equivalent, with a checkable gauge.
  Connection moved(cycle_graph(5), complete_graph(3),
                   {{OrientedEdge{2, 3}, Permutation::from_cycles(3, {{1, 2}})}});
  EquivalenceResult r = connections_equivalent(c, moved);
  ASSERT_TRUE(r.equivalent);
  for (auto e : c.base().oriented_edges())
    EXPECT_EQ(r.gauge[e.head] * c.transport(e.tail, e.head),
              moved.transport(e.tail, e.head) * r.gauge[e.tail]);
  EXPECT_THROW(connections_equivalent(c, moved, 5), ResourceError);
  EXPECT_EQ(kind_of([&] { connections_equivalent(c, make_dvb1(5)); }),
            ErrorKind::kInvalidParameter);
}

TEST(Bundle, TrivialIffEquivalentToIdentity) {
  std::mt19937 rng(29);
  const Graph base = cycle_graph(6);
  const Connection id = identity_connection(base, complete_graph(3));
  for (int trial = 0; trial < 40; ++trial) {
    Connection c = random_connection(rng, base, complete_graph(3));
    EXPECT_EQ(is_trivial(c).trivial, connections_equivalent(c, id).equivalent);
  }
}

}  // namespace
}  // namespace gbundle
