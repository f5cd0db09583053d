#include "gbundle/ricci.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "gbundle/error.hpp"
#include "gbundle/symmetry.hpp"

namespace gbundle {

int Frame::apply(int i, int u) const {
  for (std::size_t k = 0; k < ball.size(); ++k)
    if (ball[k] == u) return maps[i][k];
  throw Error(ErrorKind::kInvalidParameter,
              "vertex " + std::to_string(u) + " is outside the unit ball of " +
                  std::to_string(center));
}

FrameCheck check_frame(const Graph& g, const Frame& frame,
                       SecondNeighborReading reading) {
  FrameCheck check;
  const int x = frame.center;
  if (x < 0 || x >= g.vertex_count()) {
    check.well_formed = false;
    check.detail = "center out of range";
    return check;
  }
  std::vector<int> expected_ball{x};
  for (int w : g.neighbors(x)) expected_ball.push_back(w);
  const int d = g.degree(x);
  if (frame.ball != expected_ball || frame.degree() != d) {
    check.well_formed = false;
    check.detail = "frame does not cover the unit ball with degree many maps";
    return check;
  }
  std::vector<std::map<int, int>> eta(d);
  for (int i = 0; i < d; ++i) {
    if (frame.maps[i].size() != frame.ball.size()) {
      check.well_formed = false;
      check.detail = "map " + std::to_string(i) + " has the wrong domain size";
      return check;
    }
    for (std::size_t k = 0; k < frame.ball.size(); ++k)
      eta[i][frame.ball[k]] = frame.maps[i][k];
  }

  for (int u : frame.ball) {
    std::set<int> images;
    for (int i = 0; i < d; ++i) {
      const int image = eta[i].at(u);
      if (!g.adjacent(u, image)) {
        check.adjacency = false;
        check.detail = "eta_" + std::to_string(i) + "(" + std::to_string(u) +
                       ") is not a neighbour";
      }
      images.insert(image);
    }
    if (static_cast<int>(images.size()) != d) {
      check.distinct = false;
      check.detail = "maps collide at " + std::to_string(u);
    }
  }
  if (!check.adjacency) {
    // eta_i(x) may leave the ball; the composite conditions are undefined.
    check.second_neighbor = false;
    check.commuting = false;
    return check;
  }

  // twice[i][j] = eta_i(eta_j(x))
  std::vector<std::vector<int>> twice(d, std::vector<int>(d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) twice[i][j] = eta[i].at(eta[j].at(x));

  bool per_index = true;
  for (int i = 0; i < d && per_index; ++i) {
    std::vector<int> outer, inner;
    for (int j = 0; j < d; ++j) {
      outer.push_back(twice[j][i]);
      inner.push_back(twice[i][j]);
    }
    std::sort(outer.begin(), outer.end());
    std::sort(inner.begin(), inner.end());
    per_index = outer == inner;
  }
  if (reading == SecondNeighborReading::kPerIndex) {
    check.second_neighbor = per_index;
  } else {
    std::vector<int> all_ij, all_ji;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        all_ij.push_back(twice[i][j]);
        all_ji.push_back(twice[j][i]);
      }
    std::sort(all_ij.begin(), all_ij.end());
    std::sort(all_ji.begin(), all_ji.end());
    check.second_neighbor = all_ij == all_ji;
  }
  if (!check.second_neighbor && check.detail.empty())
    check.detail = "second-neighbour multisets differ";

  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (twice[i][j] != twice[j][i]) check.commuting = false;

  if (check.commuting && !per_index) {
    throw std::logic_error(
        "commuting frame violates the per-index multiset condition at " +
        std::to_string(x));
  }
  return check;
}

namespace {

// Fills M[k][i] = eta_i(u_k) for the neighbours u_k of the center.
class FrameSearch {
 public:
  FrameSearch(const Graph& g, int x, bool commuting,
              SecondNeighborReading reading)
      : g_(g),
        x_(x),
        commuting_(commuting),
        per_index_(reading == SecondNeighborReading::kPerIndex) {
    auto nb = g.neighbors(x);
    u_.assign(nb.begin(), nb.end());
    d_ = static_cast<int>(u_.size());
    m_.assign(d_, std::vector<int>(d_, -1));
    // values are stored as local ids within the radius-2 ball
    std::map<int, int> local;
    for (int k = 0; k < d_; ++k)
      for (int w : g.neighbors(u_[k]))
        if (local.emplace(w, static_cast<int>(local.size())).second) global_.push_back(w);
    const std::size_t n = global_.size();
    row_used_.assign(d_, std::vector<char>(n, 0));
    col_used_.assign(d_, std::vector<char>(n, 0));
    domain_.assign(d_, std::vector<std::vector<int>>(d_));
    for (int k = 0; k < d_; ++k)
      for (int i = 0; i < d_; ++i)
        for (int w : g.neighbors(u_[k]))
          if (!per_index_ || g.adjacent(w, u_[i])) domain_[k][i].push_back(local[w]);
    for (int k = 0; k < d_; ++k)
      for (int i = commuting_ ? k : 0; i < d_; ++i) vars_.emplace_back(k, i);
    assigned_.assign(vars_.size(), 0);
  }

  std::optional<Frame> run() {
    if (!solve(0)) return std::nullopt;
    Frame f;
    f.center = x_;
    f.ball.push_back(x_);
    f.ball.insert(f.ball.end(), u_.begin(), u_.end());
    f.maps.assign(d_, std::vector<int>(d_ + 1));
    for (int i = 0; i < d_; ++i) {
      f.maps[i][0] = u_[i];
      for (int k = 0; k < d_; ++k) f.maps[i][k + 1] = global_[m_[k][i]];
    }
    return f;
  }

 private:
  bool consistent(int k, int i, int val) const {
    if (row_used_[k][val]) return false;
    if (per_index_ && col_used_[i][val]) return false;
    if (commuting_ && k != i) {
      if (row_used_[i][val]) return false;
      if (per_index_ && col_used_[k][val]) return false;
    }
    return true;
  }
  void mark(int k, int i, int val, char on) {
    row_used_[k][val] = on;
    col_used_[i][val] = on;
  }
  void set(int k, int i, int val) {
    m_[k][i] = val;
    mark(k, i, val, 1);
    if (commuting_ && k != i) {
      m_[i][k] = val;
      mark(i, k, val, 1);
    }
  }
  void unset(int k, int i) {
    const int val = m_[k][i];
    m_[k][i] = -1;
    mark(k, i, val, 0);
    if (commuting_ && k != i) {
      m_[i][k] = -1;
      mark(i, k, val, 0);
    }
  }

  bool solve(std::size_t depth) {
    if (depth == vars_.size()) return true;
    // Most constrained variable first.
    int best = -1;
    int best_count = 0;
    for (std::size_t v = 0; v < vars_.size(); ++v) {
      if (assigned_[v]) continue;
      auto [k, i] = vars_[v];
      int count = 0;
      for (int val : domain_[k][i]) count += consistent(k, i, val);
      if (count == 0) return false;
      if (best < 0 || count < best_count) {
        best = static_cast<int>(v);
        best_count = count;
      }
    }
    auto [k, i] = vars_[best];
    assigned_[best] = 1;
    for (int val : domain_[k][i]) {
      if (!consistent(k, i, val)) continue;
      set(k, i, val);
      if (solve(depth + 1)) return true;
      unset(k, i);
    }
    assigned_[best] = 0;
    return false;
  }

  const Graph& g_;
  int x_;
  bool commuting_;
  bool per_index_;
  int d_ = 0;
  std::vector<int> u_;
  std::vector<int> global_;
  std::vector<std::vector<int>> m_;
  std::vector<std::vector<char>> row_used_, col_used_;
  std::vector<std::vector<std::vector<int>>> domain_;
  std::vector<std::pair<int, int>> vars_;
  std::vector<char> assigned_;
};

void require_regular(const Graph& g, const FrameOptions& options) {
  auto d = g.regular_degree();
  if (!d) {
    throw Error(ErrorKind::kInvalidParameter,
                "frames are defined for regular graphs only");
  }
  if (*d > options.max_degree) {
    throw ResourceError("max_degree",
                        "degree " + std::to_string(*d) +
                            " exceeds the frame-search cap of " +
                            std::to_string(options.max_degree));
  }
}

bool all_commuting_frames(const Graph& g, const FrameCertificate& cert) {
  if (static_cast<int>(cert.frames.size()) != g.vertex_count()) return false;
  for (const auto& f : cert.frames)
    if (!f || !check_frame(g, *f).s_ricci_ok()) return false;
  return true;
}

}  // namespace

std::optional<Frame> find_frame(const Graph& g, int x, bool require_commuting,
                                const FrameOptions& options) {
  require_regular(g, options);
  if (x < 0 || x >= g.vertex_count()) {
    throw Error(ErrorKind::kInvalidParameter,
                "vertex " + std::to_string(x) + " out of range");
  }
  FrameSearch search(g, x, require_commuting, options.reading);
  auto frame = search.run();
  if (frame) {
    FrameCheck check = check_frame(g, *frame, options.reading);
    if (!(require_commuting ? check.s_ricci_ok() : check.ricci_ok())) {
      throw std::logic_error("frame search returned an invalid frame: " +
                             check.detail);
    }
  }
  return frame;
}

FrameCertificate certify(const Graph& g, bool require_commuting,
                         const FrameOptions& options) {
  require_regular(g, options);
  FrameCertificate cert;
  cert.commuting_checked = require_commuting;
  cert.frames.resize(g.vertex_count());
  bool all_found = true;
  bool all_ricci = true;
  for (int x = 0; x < g.vertex_count(); ++x) {
    cert.frames[x] = find_frame(g, x, require_commuting, options);
    if (cert.frames[x]) continue;
    all_found = false;
    cert.failures.push_back(x);
    if (!require_commuting || !find_frame(g, x, false, options))
      all_ricci = false;
  }
  cert.ricci_flat = all_ricci;
  cert.s_ricci_flat = require_commuting && all_found;
  return cert;
}

FrameCertificate translation_frames(
    const std::vector<int>& orders,
    const std::vector<AbelianGroup::Element>& generators) {
  AbelianGroup group(orders);
  const Graph g = cayley_graph(orders, generators);
  const auto gens = symmetric_generators(group, generators);
  FrameCertificate cert;
  cert.commuting_checked = true;
  cert.frames.resize(g.vertex_count());
  bool ok = true;
  for (int x = 0; x < g.vertex_count(); ++x) {
    Frame f;
    f.center = x;
    f.ball.push_back(x);
    for (int w : g.neighbors(x)) f.ball.push_back(w);
    for (const auto& s : gens) {
      std::vector<int> row;
      for (int u : f.ball)
        row.push_back(group.index_of(group.add(group.element(u), s)));
      f.maps.push_back(std::move(row));
    }
    if (!check_frame(g, f).s_ricci_ok()) {
      ok = false;
      cert.failures.push_back(x);
    }
    cert.frames[x] = std::move(f);
  }
  cert.ricci_flat = ok;
  cert.s_ricci_flat = ok;
  return cert;
}

FourLoopCheck check_4loop_balanced(const Connection& c) {
  const Graph& g = c.base();
  FourLoopCheck result;
  std::vector<int> walk;
  std::function<bool(const Permutation&)> extend =
      [&](const Permutation& acc) {
        const int cur = walk.back();
        if (walk.size() == 5) {
          if (cur == walk.front() && !acc.is_identity()) {
            result.balanced = false;
            result.witness = Path{walk};
            return false;
          }
          return true;
        }
        for (int y : g.neighbors(cur)) {
          walk.push_back(y);
          bool keep_going = extend(c.transport(cur, y) * acc);
          walk.pop_back();
          if (!keep_going) return false;
        }
        return true;
      };
  const Permutation id = Permutation::identity(c.fiber().vertex_count());
  for (int s = 0; s < g.vertex_count(); ++s) {
    walk.assign(1, s);
    if (!extend(id)) break;
  }
  return result;
}

FrameCertificate lift_frames(const Bundle& b, const FrameCertificate& base,
                             const FrameCertificate& fiber) {
  if (!all_commuting_frames(b.base(), base)) {
    throw HypothesisError("base-frames",
                          "base frames must be commuting frames at every vertex");
  }
  if (!all_commuting_frames(b.fiber(), fiber)) {
    throw HypothesisError("fiber-frames",
                          "fiber frames must be commuting frames at every vertex");
  }
  const Connection& c = b.connection();
  FourLoopCheck loops = check_4loop_balanced(c);
  if (!loops.balanced) {
    throw HypothesisError("4-loop-balanced",
                          "connection is unbalanced on a base loop of length 4",
                          loops.witness.vertices);
  }

  const Graph& total = b.total();
  FrameCertificate cert;
  cert.commuting_checked = true;
  cert.frames.resize(total.vertex_count());
  for (int x = 0; x < b.base().vertex_count(); ++x) {
    const Frame& a = *base.frames[x];
    for (int v = 0; v < b.fiber().vertex_count(); ++v) {
      const Frame& f = *fiber.frames[v];
      const int center = b.index(x, v);
      Frame frame;
      frame.center = center;
      frame.ball.push_back(center);
      for (int w : total.neighbors(center)) frame.ball.push_back(w);

      for (int i = 0; i < a.degree(); ++i) {
        std::vector<int> row;
        for (int id : frame.ball) {
          auto [s, w] = b.coordinates(id);
          const int t = a.apply(i, s);
          row.push_back(b.index(t, c.transport(s, t)(w)));
        }
        frame.maps.push_back(std::move(row));
      }
      for (int j = 0; j < f.degree(); ++j) {
        const int bj_v = f.apply(j, v);
        std::vector<int> row;
        for (int id : frame.ball) {
          auto [s, w] = b.coordinates(id);
          if (id == center) {
            row.push_back(b.index(x, bj_v));
          } else if (s == x) {
            // w = b_k(v) for exactly one k.
            int k = 0;
            while (f.apply(k, v) != w) ++k;
            row.push_back(b.index(x, f.apply(k, bj_v)));
          } else {
            row.push_back(b.index(s, c.transport(x, s)(bj_v)));
          }
        }
        frame.maps.push_back(std::move(row));
      }

      FrameCheck check = check_frame(total, frame);
      if (!check.s_ricci_ok()) {
        throw std::logic_error("lifted frame at (" + std::to_string(x) + "," +
                               std::to_string(v) + ") fails: " + check.detail);
      }
      cert.frames[center] = std::move(frame);
    }
  }
  cert.ricci_flat = true;
  cert.s_ricci_flat = true;
  return cert;
}

LocallyAbelianReport locally_abelian_certificate(const Bundle& b) {
  const Connection& c = b.connection();
  LocallyAbelianReport r;
  TrivialityResult t = is_trivial(c);
  if (t.trivial) {
    throw HypothesisError("non-trivial", "connection is trivial");
  }
  r.unbalanced_loop = t.witness;
  r.null_elements = null_elements(c);
  if (r.null_elements.empty()) {
    throw HypothesisError("discrete-vector-bundle",
                          "no fiber vertex is fixed by every transport: not a "
                          "discrete vector bundle");
  }
  FourLoopCheck loops = check_4loop_balanced(c);
  if (!loops.balanced) {
    throw HypothesisError("4-loop-balanced",
                          "connection is unbalanced on a base loop of length 4",
                          loops.witness.vertices);
  }
  r.four_loops_balanced = true;

  FrameCertificate base = certify(b.base(), true);
  if (!base.s_ricci_flat) {
    throw HypothesisError("base-s-ricci-flat", "base is not S-Ricci flat");
  }
  r.base_s_ricci_flat = true;
  FrameCertificate fiber = certify(b.fiber(), true);
  if (!fiber.s_ricci_flat) {
    throw HypothesisError("fiber-s-ricci-flat", "fiber is not S-Ricci flat");
  }
  r.fiber_s_ricci_flat = true;
  if (!is_vertex_transitive(b.base())) {
    throw HypothesisError("base-vertex-transitive",
                          "base is not vertex-transitive");
  }
  r.base_transitive = true;
  if (!is_vertex_transitive(b.fiber())) {
    throw HypothesisError("fiber-vertex-transitive",
                          "fiber is not vertex-transitive");
  }
  r.fiber_transitive = true;

  r.lifted = lift_frames(b, base, fiber);
  r.s_ricci_flat = r.lifted.s_ricci_flat;
  AutomorphismGroup aut = automorphism_group(b.total());
  r.orbit_count = aut.orbits.count;
  r.vertex_transitive = aut.orbits.count == 1;
  r.not_cayley = !r.vertex_transitive;
  return r;
}

}  // namespace gbundle
