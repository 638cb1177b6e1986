#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "nsflow/mcfp_simplex.hpp"
#include "nsflow/network.hpp"
#include "nsflow/pivot_trace.hpp"
#include "nsflow/reduction.hpp"
#include "nsflow/simplex_common.hpp"

namespace nsflow {

enum class Side : std::uint8_t { kA, kB };

// Two vertex-disjoint trees, A rooted at s and B rooted at t, jointly
// spanning V, plus the (L, U) split of the remaining edges. Sides are
// derived from T: A is the component of s.
class PseudoTreeStructure {
 public:
  PseudoTreeStructure() = default;

  // Throws kSizeMismatch, or kInvalidNetwork if T is not two trees of the
  // required shape.
  static PseudoTreeStructure from_states(const MfpNetwork& net, std::vector<EdgeState> states);

  Side side(VertexId v) const { return sides_[static_cast<std::size_t>(v)]; }
  std::span<const Side> sides() const { return sides_; }
  std::vector<VertexId> vertices_on(Side s) const;

  EdgeState state(EdgeId e) const { return states_[static_cast<std::size_t>(e)]; }
  std::span<const EdgeState> states() const { return states_; }
  std::vector<EdgeId> edges_in(EdgeState s) const;

  VertexId parent(VertexId v) const { return parent_[static_cast<std::size_t>(v)]; }
  EdgeId parent_edge(VertexId v) const { return parent_edge_[static_cast<std::size_t>(v)]; }
  // Breadth-first order: all of A from s, then all of B from t.
  std::span<const VertexId> order() const { return order_; }

  // Canonical hash of (sorted T, sorted L, side bits).
  std::uint64_t hash() const;

  // T' = (T + entering) - leaving. Sides and parent pointers are recomputed
  // from s and t.
  void exchange(const MfpNetwork& net, EdgeId entering, EdgeId leaving, EdgeState leaving_to);

  friend bool operator==(const PseudoTreeStructure& a, const PseudoTreeStructure& b) {
    return a.states_ == b.states_ && a.sides_ == b.sides_;
  }

 private:
  void rebuild(const MfpNetwork& net);

  std::vector<EdgeState> states_;
  std::vector<Side> sides_;
  std::vector<VertexId> parent_;
  std::vector<EdgeId> parent_edge_;
  std::vector<VertexId> order_;
};

// B is grown first, breadth-first from t without passing through s, then A
// from s over the rest; neighbours are claimed in ascending vertex id. Every
// other edge goes to L, so the tree solution is the zero flow. Throws
// kUnnormalizedInput.
PseudoTreeStructure initial_pseudo_structure(const MfpNetwork& net);

// The six-way split of E \ T by set and by the sides of tail and head.
struct EdgeClassification {
  std::vector<EdgeId> lower_a_to_b;  // L_AB
  std::vector<EdgeId> upper_b_to_a;  // U_BA
  std::vector<EdgeId> within_a;      // E_AA
  std::vector<EdgeId> within_b;      // E_BB
  std::vector<EdgeId> lower_b_to_a;  // L_BA
  std::vector<EdgeId> upper_a_to_b;  // U_AB
};

EdgeClassification classify_nontree_edges(const MfpNetwork& net, const PseudoTreeStructure& ps);

// L_AB + U_BA in ascending id; empty iff the tree solution is a maximum flow.
std::vector<EdgeId> check_optimality_mfp(const EdgeClassification& cls);

struct OrientedPath {
  EdgeId entering = kNoEdge;
  // From s to t.
  std::vector<OrientedEdge> members;
};

// The s-t path in T + entering; entering is forward iff it is in L_AB.
OrientedPath find_st_path(const MfpNetwork& net, const PseudoTreeStructure& ps, EdgeId entering);

struct Augmentation {
  Quantity delta = 0;
  EdgeId leaving = kNoEdge;
  // kUpper if the leaving edge is forward on the path (saturated), else kLower.
  EdgeState leaving_to = EdgeState::kLower;
};

// Pushes the largest feasible amount along `path`, updating `f`.
Augmentation augment_and_leave(const MfpNetwork& net, Flow& f, const OrientedPath& path,
                               LeavingRule rule = LeavingRule::kFirstBlocking);

PseudoTreeStructure pivot_mfp(const MfpNetwork& net, const PseudoTreeStructure& ps,
                              EdgeId entering, const Augmentation& aug);

// Unique flow with L at zero, U at capacity, and conservation away from s and
// t. Throws InfeasibleStructure when tree edges fall outside [0, c].
Flow pseudo_tree_solution(const MfpNetwork& net, const PseudoTreeStructure& ps);

// The same structure seen in the reduced network: T + r, rooted at t.
TreeStructure to_reduced_structure(const ReducedNetwork& red, const PseudoTreeStructure& ps);

struct MinCut {
  std::vector<VertexId> source_side;
  std::vector<VertexId> sink_side;
  // Edges from the source side to the sink side, all saturated.
  std::vector<EdgeId> cut_edges;
  Quantity capacity = 0;
};

// (V_A, V_B) at an optimal structure. Throws kNotOptimal otherwise.
MinCut extract_min_cut(const MfpNetwork& net, const PseudoTreeStructure& ps, const Flow& f);

enum class MaxFlowStatus : std::uint8_t { kOptimal, kGuardTripped };

const char* to_string(MaxFlowStatus status);

// Snapshot passed to the observer for the starting structure (record ==
// nullptr) and after each pivot. Ids refer to the normalized network.
struct MfpPivotView {
  const MfpNetwork& network;
  const PseudoTreeStructure& structure;
  const Flow& flow;
  const PivotRecord* record;
};

struct MaxFlowOptions {
  LeavingRule leaving = LeavingRule::kFirstBlocking;
  // 0 selects |E| * (1 + sum c(e)).
  std::int64_t pivot_cap = 0;
  // Abort with kInternalInvariantViolation if a structure repeats at constant
  // tau.
  bool cycling_check = true;
  // Recheck structure validity, tree solution, feasibility and tau after every
  // pivot.
  bool check_invariants = false;
  std::function<void(const MfpPivotView&)> observer;
};

struct MaxFlowResult {
  MaxFlowStatus status = MaxFlowStatus::kOptimal;
  Quantity tau = 0;
  // On the network passed in.
  Flow flow;
  // Vertex and edge ids of the network passed in; populated when optimal.
  MinCut min_cut;
  // Edge ids in the trace and structure refer to normalization.network.
  PivotTrace trace;
  NormalizedMfp normalization;
  PseudoTreeStructure structure;
  std::int64_t degenerate_pivots = 0;
};

MaxFlowResult solve_mfp(const MfpNetwork& net, const MaxFlowOptions& options = {});

}  // namespace nsflow
