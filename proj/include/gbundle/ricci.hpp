#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gbundle/bundle.hpp"
#include "gbundle/graph.hpp"
#include "gbundle/path.hpp"

namespace gbundle {

// How the second-neighbour multiset condition is quantified.
//  kPerIndex: for every i, {eta_j(eta_i(x))}_j == {eta_i(eta_j(x))}_j.
//  kGlobal:   the two d^2-element multisets over (i, j) agree.
enum class SecondNeighborReading { kPerIndex, kGlobal };

struct FrameOptions {
  int max_degree = 8;
  SecondNeighborReading reading = SecondNeighborReading::kPerIndex;
};

// Local frame at `center`: maps[i][k] = eta_i(ball[k]) where ball[0] is the
// center and ball[1..d] its neighbours in ascending order.
struct Frame {
  int center = 0;
  std::vector<int> ball;
  std::vector<std::vector<int>> maps;

  int degree() const { return static_cast<int>(maps.size()); }
  // Throws Error(kInvalidParameter) if u is not in the ball.
  int apply(int i, int u) const;
};

struct FrameCheck {
  bool well_formed = true;
  bool adjacency = true;        // eta_i(u) ~ u
  bool distinct = true;         // eta_i(u) != eta_j(u) for i != j
  bool second_neighbor = true;  // multiset condition under the reading
  bool commuting = true;        // eta_i(eta_j(x)) == eta_j(eta_i(x))
  std::string detail;

  bool ricci_ok() const {
    return well_formed && adjacency && distinct && second_neighbor;
  }
  bool s_ricci_ok() const { return ricci_ok() && commuting; }
};

// Condition scan independent of the search that produced the frame. A frame
// that commutes but fails the per-index multiset condition throws
// std::logic_error: commuting must imply it.
FrameCheck check_frame(const Graph& g, const Frame& frame,
                       SecondNeighborReading reading =
                           SecondNeighborReading::kPerIndex);

// Backtracking search with eta_i(x) fixed to the i-th neighbour of x.
// Throws Error(kInvalidParameter) on a non-regular graph and ResourceError
// above the degree cap.
std::optional<Frame> find_frame(const Graph& g, int x, bool require_commuting,
                                const FrameOptions& options = {});

struct FrameCertificate {
  std::vector<std::optional<Frame>> frames;
  bool ricci_flat = false;
  // Only meaningful when commuting frames were requested.
  bool s_ricci_flat = false;
  bool commuting_checked = false;
  std::vector<int> failures;
};

FrameCertificate certify(const Graph& g, bool require_commuting,
                         const FrameOptions& options = {});

// Frames eta_s(u) = u + s for an Abelian Cayley graph, one map per element
// of the symmetrised generating set.
FrameCertificate translation_frames(
    const std::vector<int>& orders,
    const std::vector<AbelianGroup::Element>& generators);

struct FourLoopCheck {
  bool balanced = true;
  Path witness;
};

// Every closed base walk of length 4, from every vertex.
FourLoopCheck check_4loop_balanced(const Connection& c);

// Builds bundle frames from commuting base and fiber frames. Throws
// HypothesisError (with the witness loop) when some base 4-loop is
// unbalanced or the supplied frames are not commuting frames, and
// std::logic_error if a lifted frame fails validation.
FrameCertificate lift_frames(const Bundle& b, const FrameCertificate& base,
                             const FrameCertificate& fiber);

struct LocallyAbelianReport {
  std::vector<int> null_elements;
  Path unbalanced_loop;
  bool four_loops_balanced = false;
  bool base_s_ricci_flat = false;
  bool fiber_s_ricci_flat = false;
  bool base_transitive = false;
  bool fiber_transitive = false;
  FrameCertificate lifted;
  bool s_ricci_flat = false;
  bool vertex_transitive = true;
  int orbit_count = 0;
  // Not vertex-transitive, hence not a Cayley graph.
  bool not_cayley = false;
};

// Hypotheses checked in order: non-trivial connection, discrete vector
// bundle, balanced 4-loops, S-Ricci-flat and vertex-transitive base and
// fiber. The first failure throws HypothesisError naming it.
LocallyAbelianReport locally_abelian_certificate(const Bundle& b);

}  // namespace gbundle
