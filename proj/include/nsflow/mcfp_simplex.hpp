#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "nsflow/network.hpp"
#include "nsflow/simplex_common.hpp"

namespace nsflow {

// Partition (T, L, U) of the edge set with T a spanning tree, stored rooted
// at `root()` with parent pointers and a breadth-first vertex order.
class TreeStructure {
 public:
  TreeStructure() = default;

  // Throws kSizeMismatch, or kInvalidNetwork when the kTree edges do not
  // form a spanning tree.
  static TreeStructure from_states(const Digraph& g, std::vector<EdgeState> states,
                                   VertexId root);

  EdgeState state(EdgeId e) const { return states_[static_cast<std::size_t>(e)]; }
  std::span<const EdgeState> states() const { return states_; }
  std::vector<EdgeId> edges_in(EdgeState s) const;

  VertexId root() const { return root_; }
  VertexId parent(VertexId v) const { return parent_[static_cast<std::size_t>(v)]; }
  EdgeId parent_edge(VertexId v) const { return parent_edge_[static_cast<std::size_t>(v)]; }
  std::int32_t depth(VertexId v) const { return depth_[static_cast<std::size_t>(v)]; }
  // Vertices in breadth-first order from the root.
  std::span<const VertexId> order() const { return order_; }

  std::uint64_t hash() const { return hash_edge_partition(states_); }

  // T' = (T + entering) - leaving; leaving moves to `leaving_to`. With
  // entering == leaving only the state of that edge changes.
  void exchange(const Digraph& g, EdgeId entering, EdgeId leaving, EdgeState leaving_to);

  friend bool operator==(const TreeStructure& a, const TreeStructure& b) {
    return a.root_ == b.root_ && a.states_ == b.states_;
  }

 private:
  void rebuild(const Digraph& g);

  std::vector<EdgeState> states_;
  VertexId root_ = 0;
  std::vector<VertexId> parent_;
  std::vector<EdgeId> parent_edge_;
  std::vector<std::int32_t> depth_;
  std::vector<VertexId> order_;
};

// pi(base) = 0 and cost(e) + pi(tail) - pi(head) = 0 on every tree edge.
struct Potential {
  VertexId base = 0;
  std::vector<Quantity> value;

  Quantity operator[](VertexId v) const { return value[static_cast<std::size_t>(v)]; }
};

Potential compute_potential(const McfpNetwork& net, const TreeStructure& ts, VertexId base);

// cost(e) + pi(tail) - pi(head).
Quantity reduced_cost(const McfpNetwork& net, const Potential& pot, EdgeId e);

// The unique edge function with L at lower bounds, U at upper bounds, and the
// demand condition met; tree values come from leaf elimination. Throws
// InfeasibleStructure listing every tree edge outside its bounds.
Flow tree_solution(const McfpNetwork& net, const TreeStructure& ts);

// Edges in L with negative reduced cost and edges in U with positive reduced
// cost, ascending id. Empty iff the structure is optimal.
std::vector<EdgeId> check_optimality(const McfpNetwork& net, const TreeStructure& ts,
                                     const Potential& pot);

struct OrientedCircuit {
  EdgeId entering = kNoEdge;
  // Traversal order, starting with the entering edge.
  std::vector<OrientedEdge> members;
};

// Unique circuit in T + entering, oriented along the entering edge if it is
// in L and against it if it is in U.
OrientedCircuit find_circuit(const Digraph& g, const TreeStructure& ts, EdgeId entering);

struct McfpPivotRecord {
  EdgeId entering = kNoEdge;
  EdgeId leaving = kNoEdge;
  Quantity delta = 0;
  Quantity cost_change = 0;
  // Objective after the pivot; filled in by solve_mcfp.
  Quantity cost = 0;
  std::uint64_t structure_hash = 0;
  bool degenerate = false;
};

// Upper bound treated as unbounded by pivot().
inline constexpr Quantity kUnboundedCapacity = INT64_MAX;

// Augments around the circuit of `entering` by the largest feasible amount,
// removes the blocking edge picked by `rule`, and updates `ts` and `f` in
// place. Throws kUnboundedDirection if no circuit edge has a finite bound.
McfpPivotRecord pivot(const McfpNetwork& net, TreeStructure& ts, Flow& f, EdgeId entering,
                      LeavingRule rule);

// Network extended by one artificial vertex joined to every original vertex,
// with the artificial star as the starting spanning tree.
struct AugmentedMcfp {
  McfpNetwork network;
  VertexId artificial_root = kNoVertex;
  EdgeId first_artificial = 0;
  Quantity artificial_cost = 0;
  TreeStructure structure;
  Flow flow;

  bool is_artificial(EdgeId e) const { return e >= first_artificial; }
};

// Original edges start in L at their lower bounds; artificial edges carry the
// remaining imbalance. Artificial cost is 1 + sum |cost(e)| * upper(e).
// `root` selects the tree root among the original vertices; kNoVertex roots
// at the artificial vertex.
AugmentedMcfp initial_structure_bigM(const McfpNetwork& net, VertexId root = 0);

enum class EnteringRule : std::uint8_t {
  kFirstEligible,  // lowest edge id violating optimality
  kDantzig,        // largest |reduced cost|, ties to the lowest id
};

enum class McfpStatus : std::uint8_t { kOptimal, kInfeasible, kGuardTripped };

const char* to_string(McfpStatus status);

// Snapshot passed to the observer before the first pivot (record == nullptr)
// and after every pivot.
struct McfpPivotView {
  const AugmentedMcfp& augmented;
  const TreeStructure& structure;
  const Flow& flow;
  const McfpPivotRecord* record;
};

struct McfpSolveOptions {
  LeavingRule leaving = LeavingRule::kFirstBlocking;
  EnteringRule entering = EnteringRule::kFirstEligible;
  // A vertex of the original network.
  VertexId base_vertex = 0;
  // 0 selects 10 * |E'| * (1 + sum upper(e)).
  std::int64_t pivot_cap = 0;
  // Recompute the tree solution and recheck feasibility and cost monotonicity
  // after every pivot; violations throw kInternalInvariantViolation.
  bool check_invariants = false;
  std::function<void(const McfpPivotView&)> observer;
};

struct McfpSolveResult {
  McfpStatus status = McfpStatus::kOptimal;
  // Restriction to the original edges, and its cost.
  Flow flow;
  Quantity cost = 0;
  // Final state on the augmented network.
  AugmentedMcfp augmented;
  std::vector<McfpPivotRecord> trace;
  std::int64_t degenerate_pivots = 0;
};

McfpSolveResult solve_mcfp(const McfpNetwork& net, const McfpSolveOptions& options = {});

}  // namespace nsflow
