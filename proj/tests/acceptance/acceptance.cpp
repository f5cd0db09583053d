// One PASS/FAIL line per acceptance criterion; nonzero exit if any fails.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include <sys/wait.h>

#include "gbundle/error.hpp"
#include "gbundle/examples.hpp"
#include "gbundle/ricci.hpp"
#include "gbundle/symmetry.hpp"
#include "gbundle/walks.hpp"

namespace fs = std::filesystem;
using namespace gbundle;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back("failed: " + what);
    }
  }
  void note(const std::string& s) { notes.push_back(s); }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string str(const BigInt& v) { return v.str(); }

// Transport tables straight from the connection, as image arrays.
struct Transports {
  int fiber_size = 0;
  std::map<std::pair<int, int>, std::vector<int>> fwd, inv;
  explicit Transports(const Connection& c) : fiber_size(c.fiber().vertex_count()) {
    for (auto [x, y] : c.base().edges())
      for (auto [a, b] : {std::pair{x, y}, std::pair{y, x}}) {
        fwd[{a, b}] = c.transport(a, b).image();
        std::vector<int> r(fiber_size);
        for (int v = 0; v < fiber_size; ++v) r[fwd[{a, b}][v]] = v;
        inv[{a, b}] = r;
      }
  }
};

long long count_walks(const Graph& g, int from, int length) {
  if (length == 0) return 1;
  long long s = 0;
  for (int w : g.neighbors(from)) s += count_walks(g, w, length - 1);
  return s;
}

long long choose(int n, int k) {
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// ---------------------------------------------------------------------------
// 1. Walk counts with fixed base and fiber projections.

Outcome criterion1() {
  Outcome out;
  const int kMaxTotal = 8;
  struct Config {
    std::string name;
    Connection c;
  };
  std::vector<Config> configs;
  for (int n : {5, 6}) {
    configs.push_back({"identity C" + std::to_string(n) + " K3",
                       identity_connection(cycle_graph(n), complete_graph(3))});
    configs.push_back({"identity C" + std::to_string(n) + " C4",
                       identity_connection(cycle_graph(n), cycle_graph(4))});
    configs.push_back({"eg2 C" + std::to_string(n) + " K3", make_eg2(n, 3)});
    configs.push_back({"dvb1 C" + std::to_string(n) + " C4", make_dvb1(n)});
  }
  long long walks = 0, buckets = 0;
  for (const auto& cfg : configs) {
    const Graph& base = cfg.c.base();
    const Graph& fiber = cfg.c.fiber();
    const int F = fiber.vertex_count();
    Transports t(cfg.c);
    for (int x0 = 0; x0 < base.vertex_count(); ++x0)
      for (int v0 = 0; v0 < F; ++v0) {
        // key: base projection, 0xff, pulled-back fiber projection
        std::unordered_map<std::string, long long> count;
        std::string bp{static_cast<char>(x0)}, fp{static_cast<char>(v0)};
        std::vector<int> accinv(F);
        for (int v = 0; v < F; ++v) accinv[v] = v;
        std::function<void(int, int, int)> go = [&](int x, int v, int depth) {
          ++count[bp + '\xff' + fp];
          ++walks;
          if (depth == kMaxTotal) return;
          for (int w : fiber.neighbors(v)) {
            const char pulled = static_cast<char>(accinv[w]);
            const bool grow = fp.back() != pulled;
            if (grow) fp.push_back(pulled);
            go(x, w, depth + 1);
            if (grow) fp.pop_back();
          }
          for (int y : base.neighbors(x)) {
            const int w = t.fwd.at({x, y})[v];
            const auto& back = t.inv.at({x, y});
            std::vector<int> saved = accinv;
            for (int u = 0; u < F; ++u) accinv[u] = saved[back[u]];
            bp.push_back(static_cast<char>(y));
            go(y, w, depth + 1);
            bp.pop_back();
            accinv = std::move(saved);
          }
        };
        go(x0, v0, 0);
        std::map<std::pair<int, int>, long long> per_shape;
        for (const auto& [key, n] : count) {
          const auto sep = key.find('\xff');
          const int a = static_cast<int>(sep) - 1;
          const int b = static_cast<int>(key.size() - sep) - 2;
          ++per_shape[{a, b}];
          if (n != choose(a + b, b)) {
            out.require(false, cfg.name + ": bucket with |base|=" + std::to_string(a) +
                                   " |fiber|=" + std::to_string(b) + " has " +
                                   std::to_string(n) + " walks");
            return out;
          }
        }
        // every admissible pair occurs
        for (int a = 0; a <= kMaxTotal; ++a)
          for (int b = 0; a + b <= kMaxTotal; ++b)
            if (per_shape[{a, b}] != count_walks(base, x0, a) * count_walks(fiber, v0, b)) {
              out.require(false, cfg.name + ": missing projection pairs");
              return out;
            }
        buckets += static_cast<long long>(count.size());
      }
    ProjectionSweep sweep = verify_projection_counts(Bundle(cfg.c), kMaxTotal);
    out.require(sweep.mismatches == 0, cfg.name + ": library sweep " +
                                           (sweep.failures.empty() ? "" : sweep.failures[0]));
  }
  out.note(std::to_string(configs.size()) + " configurations, " + std::to_string(walks) +
           " walks, " + std::to_string(buckets) + " projection pairs");
  return out;
}

// ---------------------------------------------------------------------------
// 2. Triviality against exhaustive loop balancedness.

Outcome criterion2() {
  Outcome out;
  const Graph base = cycle_graph(6);
  const Graph fiber = complete_graph(3);
  std::mt19937 rng(20240601);
  std::vector<std::vector<int>> s3;
  std::vector<int> p{0, 1, 2};
  do s3.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  const auto edges = base.edges();
  int trivial_seen = 0;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Connection::Assignment> assign;
    if (trial % 2 == 0) {
      // independent permutations on a random subset of edges
      std::bernoulli_distribution pick(0.5);
      for (auto [x, y] : edges)
        if (pick(rng)) assign.push_back({{x, y}, Permutation(s3[rng() % 6])});
    } else {
      // random permutations on every edge, built from vertex gauges
      std::vector<std::vector<int>> g(6);
      for (auto& gi : g) gi = s3[rng() % 6];
      std::bernoulli_distribution twist(0.3);
      for (auto [x, y] : edges) {
        std::vector<int> inv_x(3), img(3);
        for (int v = 0; v < 3; ++v) inv_x[g[x][v]] = v;
        for (int v = 0; v < 3; ++v) img[v] = g[y][inv_x[v]];
        if (twist(rng)) std::swap(img[0], img[1]);
        assign.push_back({{x, y}, Permutation(img)});
      }
    }
    const Connection c(base, fiber, assign);
    Transports t(c);
    bool all_balanced = true;
    for (int s = 0; s < 6 && all_balanced; ++s) {
      std::function<void(int, std::vector<int>, int)> go = [&](int x, std::vector<int> acc,
                                                               int left) {
        if (!all_balanced) return;
        if (x == s && acc != std::vector<int>{0, 1, 2}) all_balanced = false;
        if (left == 0) return;
        for (int y : base.neighbors(x)) {
          std::vector<int> next(3);
          for (int v = 0; v < 3; ++v) next[v] = t.fwd.at({x, y})[acc[v]];
          go(y, next, left - 1);
        }
      };
      go(s, {0, 1, 2}, 8);
    }
    const TrivialityResult r = is_trivial(c);
    out.require(r.trivial == all_balanced, "trial " + std::to_string(trial));
    if (!r.trivial) {
      out.require(!is_balanced(c, r.witness), "trial " + std::to_string(trial) + " witness");
      continue;
    }
    ++trivial_seen;
    const Bundle b(c);
    const Graph product = cartesian_product(base, fiber);
    const std::vector<int> psi = trivialization_isomorphism(c);
    std::vector<int> sorted = psi;
    std::sort(sorted.begin(), sorted.end());
    bool bijective = true;
    for (int i = 0; i < static_cast<int>(sorted.size()); ++i) bijective &= sorted[i] == i;
    out.require(bijective, "psi bijective");
    bool edges_ok = product.edge_count() == b.total().edge_count();
    for (auto [u, v] : product.edges()) edges_ok &= b.total().adjacent(psi[u], psi[v]);
    for (int u = 0; u < product.vertex_count(); ++u) edges_ok &= b.project(psi[u]) == u / 3;
    out.require(edges_ok, "psi edge scan, trial " + std::to_string(trial));
  }
  out.note(std::to_string(trivial_seen) + " of 50 trivial");
  out.require(trivial_seen > 0 && trivial_seen < 50, "both outcomes exercised");
  return out;
}

// ---------------------------------------------------------------------------
// 3. Loop-count separation on eg2(5,3).

Outcome criterion3() {
  Outcome out;
  const auto t0 = std::chrono::steady_clock::now();
  const Connection c = make_eg2(5, 3);
  const Bundle b(c);
  const Graph product = cartesian_product(c.base(), c.fiber());
  auto m = minimal_unbalanced_loop(c);
  out.require(m && m->length == 5, "m(x0) = 5");
  const auto bundle_counts = closed_walk_counts(b.total(), 5);
  const auto product_counts = closed_walk_counts(product, 5);
  const BigInt product_min = *std::min_element(product_counts.begin(), product_counts.end());
  const BigInt product_max = *std::max_element(product_counts.begin(), product_counts.end());
  out.require(product_min == product_max, "product counts uniform");
  // Vertices whose fiber point is moved by the shortest unbalanced loop at its base.
  int moved = 0;
  for (int id = 0; id < b.total().vertex_count(); ++id) {
    const int x = id / 3, v = id % 3;
    auto loop = shortest_unbalanced_loop(c, x);
    if (loop->holonomy(v) == v) {
      if (bundle_counts[id] >= product_min)
        out.note("count at fixed point (" + std::to_string(x) + "," + std::to_string(v) +
                 ") is " + str(bundle_counts[id]) + ", equal to the product's " +
                 str(product_min));
      continue;
    }
    ++moved;
    out.require(bundle_counts[id] < product_min, "strictly fewer at vertex " + std::to_string(id));
  }
  out.require(moved == 10, "ten moved vertices");
  out.require(bundle_counts[b.index(0, 1)] != bundle_counts[b.index(0, 0)],
              "counts at (0,1) and (0,0) differ");
  out.note("counts: bundle (0,1) " + str(bundle_counts[b.index(0, 1)]) + ", bundle (0,0) " +
           str(bundle_counts[b.index(0, 0)]) + ", product " + str(product_min));
  out.require(!are_isomorphic(b.total(), product).isomorphic, "not isomorphic to product");
  out.require(!is_vertex_transitive(b.total()), "not vertex-transitive");
  const double s = seconds_since(t0);
  out.require(s <= 30, "runtime");
  return out;
}

// ---------------------------------------------------------------------------
// 4. dvb1(5).

Outcome criterion4() {
  Outcome out;
  const Connection c = make_dvb1(5);
  const Bundle b(c);
  out.require(!is_trivial(c).trivial, "non-trivial");
  out.require(null_elements(c).empty(), "no null element");
  out.require(is_vertex_transitive(b.total()), "vertex-transitive");
  const Permutation tau(dvb1_tau(5));
  const RhoAction rho = rho_automorphism(b);
  out.require(tau.is_automorphism_of(b.total()), "tau is an automorphism");
  out.require(rho.rho.is_automorphism_of(b.total()), "rho is an automorphism");
  out.require(orbits_of(20, {tau, rho.rho}).count == 1, "tau and rho act transitively");
  const Graph product = cartesian_product(c.base(), c.fiber());
  out.note(std::string("isomorphic to C5 x C4: ") +
           (are_isomorphic(b.total(), product).isomorphic ? "yes" : "no"));
  return out;
}

// ---------------------------------------------------------------------------
// 5, 6. Orbit counts.

Outcome orbit_criterion(const std::vector<std::pair<Connection, int>>& cases,
                        const std::vector<std::string>& names, double limit) {
  Outcome out;
  const auto t0 = std::chrono::steady_clock::now();
  for (std::size_t k = 0; k < cases.size(); ++k) {
    const Graph g = Bundle(cases[k].first).total();
    const int got = automorphism_group(g).orbits.count;
    out.require(got == cases[k].second, names[k] + " has " + std::to_string(got) + " orbits");
    // Walk-count signatures separate at least as many classes.
    std::set<std::vector<BigInt>> sigs;
    for (int v = 0; v < g.vertex_count(); ++v) {
      std::vector<BigInt> sig;
      for (int L = 3; L <= 8; ++L) sig.push_back(closed_walk_count(g, v, L));
      sigs.insert(sig);
    }
    out.require(static_cast<int>(sigs.size()) <= got, names[k] + " walk signatures");
  }
  out.require(seconds_since(t0) <= limit, "runtime");
  return out;
}

// ---------------------------------------------------------------------------
// Frame validator used by 7 and 8, written against the definitions directly.

bool frame_valid(const Graph& g, const Frame& f, std::string& why) {
  const int x = f.center;
  const int d = g.degree(x);
  std::vector<int> ball{x};
  for (int w : g.neighbors(x)) ball.push_back(w);
  std::vector<int> a = ball, b2 = f.ball;
  std::sort(a.begin(), a.end());
  std::sort(b2.begin(), b2.end());
  if (a != b2 || static_cast<int>(f.maps.size()) != d) {
    why = "ball";
    return false;
  }
  auto eta = [&](int i, int u) {
    for (std::size_t k = 0; k < f.ball.size(); ++k)
      if (f.ball[k] == u) return f.maps[i][k];
    return -1;
  };
  for (int u : ball) {
    std::set<int> images;
    for (int i = 0; i < d; ++i) {
      const int w = eta(i, u);
      if (w < 0 || !g.adjacent(u, w)) {
        why = "adjacency";
        return false;
      }
      images.insert(w);
    }
    if (static_cast<int>(images.size()) != d) {
      why = "distinct";
      return false;
    }
  }
  for (int i = 0; i < d; ++i) {
    std::multiset<int> lhs, rhs;
    for (int j = 0; j < d; ++j) {
      lhs.insert(eta(j, eta(i, x)));
      rhs.insert(eta(i, eta(j, x)));
      if (eta(i, eta(j, x)) != eta(j, eta(i, x))) {
        why = "commuting";
        return false;
      }
    }
    if (lhs != rhs) {
      why = "second neighbours";
      return false;
    }
  }
  return true;
}

void require_frames(Outcome& out, const Graph& g, const FrameCertificate& cert,
                    const std::string& what) {
  if (static_cast<int>(cert.frames.size()) != g.vertex_count()) {
    out.require(false, what + ": frame count");
    return;
  }
  for (const auto& f : cert.frames) {
    std::string why;
    if (!f || !frame_valid(g, *f, why)) {
      out.require(false, what + ": frame at " + (f ? std::to_string(f->center) : "?") + " " + why);
      return;
    }
  }
}

// ---------------------------------------------------------------------------
// 7. Frame lifting pipeline.

Outcome criterion7() {
  Outcome out;
  const Bundle b(make_eg2(5, 3));
  out.require(check_4loop_balanced(b.connection()).balanced, "4-loops balanced");
  const FrameCertificate base = certify(b.base(), true);
  const FrameCertificate fiber = certify(b.fiber(), true);
  out.require(base.s_ricci_flat && fiber.s_ricci_flat, "base and fiber S-Ricci flat");
  const FrameCertificate lifted = lift_frames(b, base, fiber);
  require_frames(out, b.total(), lifted, "lifted frames");
  for (const auto& f : lifted.frames)
    if (f) out.require(check_frame(b.total(), *f).s_ricci_ok(), "library validator");
  const LocallyAbelianReport r = locally_abelian_certificate(b);
  out.require(r.s_ricci_flat, "certificate: S-Ricci flat");
  out.require(!r.vertex_transitive && r.not_cayley, "certificate: not vertex-transitive");
  // negative control
  const Bundle bad(make_eg2(4, 3));
  try {
    lift_frames(bad, certify(bad.base(), true), certify(bad.fiber(), true));
    out.require(false, "eg2(4,3) lifted");
  } catch (const HypothesisError& e) {
    std::vector<int> w = e.witness();
    out.require(e.hypothesis() == "4-loop-balanced", "eg2(4,3) hypothesis name");
    out.require(w.size() == 5 && w.front() == w.back(), "witness is a 4-loop");
    if (w.size() == 5) {
      std::vector<int> body(w.begin(), w.end() - 1);
      std::sort(body.begin(), body.end());
      out.require(body == std::vector<int>{0, 1, 2, 3}, "witness is the base 4-cycle");
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// 8. Torus example.

Outcome criterion8() {
  Outcome out;
  const Connection c = make_dvb2_torus(4);
  const Bundle b(c);
  out.require(check_4loop_balanced(c).balanced, "4-loops balanced");
  const Graph& g = c.base();
  bool unbalanced_triangle = false;
  for (int x = 0; x < g.vertex_count() && !unbalanced_triangle; ++x)
    for (int y : g.neighbors(x))
      for (int z : g.neighbors(y))
        if (z != x && g.adjacent(z, x) && !is_balanced(c, Path{{x, y, z, x}})) {
          unbalanced_triangle = true;
          out.note("unbalanced triangle " + std::to_string(x) + "," + std::to_string(y) + "," +
                   std::to_string(z));
          break;
        }
  out.require(unbalanced_triangle, "an unbalanced 3-cycle");
  const FrameCertificate direct = certify(b.total(), true);
  out.require(direct.s_ricci_flat, "S-Ricci flat (direct search)");
  require_frames(out, b.total(), direct, "direct frames");
  const FrameCertificate lifted = lift_frames(b, certify(b.base(), true), certify(b.fiber(), true));
  require_frames(out, b.total(), lifted, "lifted frames");
  out.require(is_vertex_transitive(b.total()), "vertex-transitive");
  out.require(are_isomorphic(b.total(), dvb2_cayley_target(4)).isomorphic,
              "isomorphic to Cayley(Z4 x Z4 x Z2)");
  return out;
}

// ---------------------------------------------------------------------------
// 9. Abelian Cayley graphs.

void sorted_order_tuples(int limit, int min_order, std::vector<int>& cur,
                         std::vector<std::vector<int>>& out) {
  if (!cur.empty()) out.push_back(cur);
  int product = 1;
  for (int o : cur) product *= o;
  for (int o = min_order; product * o <= limit; ++o) {
    cur.push_back(o);
    sorted_order_tuples(limit, o, cur, out);
    cur.pop_back();
  }
}

Outcome criterion9() {
  Outcome out;
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<std::vector<int>> groups;
  std::vector<int> cur;
  sorted_order_tuples(30, 2, cur, groups);
  long long graphs = 0, certified = 0;
  std::set<std::vector<std::pair<int, int>>> seen;
  for (const auto& orders : groups) {
    AbelianGroup grp(orders);
    // one representative per {g, -g}
    std::vector<int> reps, weight;
    for (int i = 1; i < grp.size(); ++i) {
      const int j = grp.index_of(grp.negate(grp.element(i)));
      if (j < i) continue;
      reps.push_back(i);
      weight.push_back(i == j ? 1 : 2);
    }
    std::vector<int> chosen;
    std::function<void(std::size_t, int)> go = [&](std::size_t next, int degree) {
      if (!chosen.empty()) {
        std::vector<AbelianGroup::Element> gens;
        for (int i : chosen) gens.push_back(grp.element(i));
        Graph g;
        bool connected = true;
        try {
          g = cayley_graph(orders, gens);
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::kDisconnected) throw;
          connected = false;
        }
        if (connected) {
          ++graphs;
          if (seen.insert(canonical_form(g).certificate).second) {
            const FrameCertificate cert = certify(g, true);
            ++certified;
            if (!cert.s_ricci_flat) {
              std::ostringstream s;
              s << "Z";
              for (int o : orders) s << " " << o;
              s << " with " << chosen.size() << " generators";
              out.require(false, s.str());
            }
          }
        }
      }
      for (std::size_t k = next; k < reps.size(); ++k)
        if (degree + weight[k] <= 8) {
          chosen.push_back(reps[k]);
          go(k + 1, degree + weight[k]);
          chosen.pop_back();
        }
    };
    go(0, 0);
  }
  const double s = seconds_since(t0);
  out.note(std::to_string(groups.size()) + " groups, " + std::to_string(graphs) +
           " connected Cayley graphs, " + std::to_string(certified) +
           " up to isomorphism, " + std::to_string(static_cast<int>(s)) + " s");
  out.require(s <= 120, "runtime");
  return out;
}

// ---------------------------------------------------------------------------
// 10. CLI reports are byte-identical across runs.

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome criterion10() {
  Outcome out;
  const fs::path dir = fs::temp_directory_path() / "gbundle_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string cli = GBUNDLE_CLI_PATH;
  auto run = [&](const std::string& args) {
    const std::string cmd = "\"" + cli + "\" " + args + " > /dev/null 2>&1";
    return std::system(cmd.c_str());
  };
  std::vector<std::string> runs;
  for (const auto& entry : catalog()) {
    std::string args = entry.spec.name;
    for (const auto& [k, v] : entry.spec.params) args += " --" + k + " " + std::to_string(v);
    if (run("example " + args + " --dir " + dir.string()) != 0) {
      out.require(false, "example " + args);
      continue;
    }
    const std::string stem = (dir / entry.spec.slug()).string();
    runs.push_back("check " + stem + ".conn --checks trivial,dvb,transitive,orbits,s-ricci,theorem2,theorem4,4loop");
    runs.push_back("--jobs 3 check " + stem + ".conn --checks trivial,dvb,orbits,4loop");
    runs.push_back("count " + stem + ".bundle.graph --vertex 1 --length 9");
    runs.push_back("export-dot " + stem + ".bundle.graph");
  }
  runs.push_back("project " + (dir / "eg2_5_3.conn").string() + " --walk 1,5,8,11,14,2,0");
  runs.push_back("verify-lemmas --max-total 5");
  int i = 0;
  for (const auto& r : runs) {
    std::string outputs[2];
    // same path both rounds: argv is part of the report
    const fs::path p = dir / ("run_" + std::to_string(i));
    for (int round = 0; round < 2; ++round) {
      fs::remove(p);
      const int code = run("--seed 11 --out " + p.string() + " " + r);
      // mismatches (exit 1) still produce a report
      if (code != 0 && WEXITSTATUS(code) != 1) out.require(false, "exit status for " + r);
      outputs[round] = slurp(p);
    }
    out.require(!outputs[0].empty() && outputs[0] == outputs[1], "identical reports for " + r);
    ++i;
  }
  out.note(std::to_string(runs.size()) + " commands run twice");
  fs::remove_all(dir);
  return out;
}

}  // namespace

int main() {
  using Fn = std::function<Outcome()>;
  const std::vector<std::pair<std::string, Fn>> criteria{
      {"projection counts match the binomial closed form", criterion1},
      {"triviality agrees with exhaustive loop balance", criterion2},
      {"eg2(5,3) loop-count separation", criterion3},
      {"dvb1(5) properties", criterion4},
      {"eg2 orbit counts",
       [] {
         return orbit_criterion({{make_eg2(4, 4), 2}, {make_eg2(5, 3), 2}, {make_eg2(5, 4), 2}},
                                {"eg2(4,4)", "eg2(5,3)", "eg2(5,4)"}, 1e9);
       }},
      {"eg3 orbit counts",
       [] {
         return orbit_criterion({{make_eg3(5, 2), 2}, {make_eg3(5, 3), 3}, {make_eg3(6, 3), 3}},
                                {"eg3(5,2)", "eg3(5,3)", "eg3(6,3)"}, 120);
       }},
      {"frame lifting on eg2(5,3)", criterion7},
      {"dvb2 torus N=4", criterion8},
      {"abelian Cayley graphs are S-Ricci flat", criterion9},
      {"deterministic reports", criterion10},
  };
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.notes.push_back(std::string("exception: ") + e.what());
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f s", seconds_since(t0));
    std::cout << "criterion " << k + 1 << ": " << (o.pass ? "PASS" : "FAIL") << "  "
              << criteria[k].first << " (" << buf << ")\n";
    for (const auto& n : o.notes) std::cout << "    " << n << "\n";
    std::cout.flush();
    failures += !o.pass;
  }
  return failures == 0 ? 0 : 1;
}
