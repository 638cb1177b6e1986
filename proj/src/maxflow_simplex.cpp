#include "nsflow/maxflow_simplex.hpp"

#include <algorithm>
#include <limits>
#include <string>
#include <unordered_set>

#include "nsflow/error.hpp"

namespace nsflow {

namespace {

[[noreturn]] void invariant_failure(const std::string& what) {
  throw FlowError(ErrorCode::kInternalInvariantViolation, what);
}

}  // namespace

PseudoTreeStructure PseudoTreeStructure::from_states(const MfpNetwork& net,
                                                     std::vector<EdgeState> states) {
  if (states.size() != static_cast<std::size_t>(net.graph().edge_count())) {
    throw FlowError(ErrorCode::kSizeMismatch, "edge state array must match edge count");
  }
  PseudoTreeStructure ps;
  ps.states_ = std::move(states);
  ps.rebuild(net);
  return ps;
}

void PseudoTreeStructure::rebuild(const MfpNetwork& net) {
  const Digraph& g = net.graph();
  const auto n = static_cast<std::size_t>(g.vertex_count());
  sides_.assign(n, Side::kA);
  parent_.assign(n, kNoVertex);
  parent_edge_.assign(n, kNoEdge);
  order_.clear();
  order_.reserve(n);
  std::vector<char> seen(n, 0);

  for (const auto& [root, side] : {std::pair{net.source(), Side::kA}, {net.sink(), Side::kB}}) {
    if (seen[static_cast<std::size_t>(root)]) {
      throw FlowError(ErrorCode::kInvalidNetwork, "tree edges join s to t");
    }
    seen[static_cast<std::size_t>(root)] = 1;
    sides_[static_cast<std::size_t>(root)] = side;
    const std::size_t start = order_.size();
    order_.push_back(root);
    for (std::size_t i = start; i < order_.size(); ++i) {
      const VertexId v = order_[i];
      for (EdgeId e : g.incident(v)) {
        if (state(e) != EdgeState::kTree || e == parent_edge(v)) continue;
        const VertexId w = g.opposite(e, v);
        if (seen[static_cast<std::size_t>(w)]) {
          throw FlowError(ErrorCode::kInvalidNetwork,
                          w == net.source() || w == net.sink() ? "tree edges join s to t"
                                                               : "tree edges contain a cycle",
                          e);
        }
        seen[static_cast<std::size_t>(w)] = 1;
        sides_[static_cast<std::size_t>(w)] = side;
        parent_[static_cast<std::size_t>(w)] = v;
        parent_edge_[static_cast<std::size_t>(w)] = e;
        order_.push_back(w);
      }
    }
  }
  if (order_.size() != n) {
    throw FlowError(ErrorCode::kInvalidNetwork, "the two trees do not cover every vertex");
  }
}

std::vector<VertexId> PseudoTreeStructure::vertices_on(Side s) const {
  std::vector<VertexId> out;
  for (std::size_t v = 0; v < sides_.size(); ++v) {
    if (sides_[v] == s) out.push_back(static_cast<VertexId>(v));
  }
  return out;
}

std::vector<EdgeId> PseudoTreeStructure::edges_in(EdgeState s) const {
  std::vector<EdgeId> out;
  for (std::size_t e = 0; e < states_.size(); ++e) {
    if (states_[e] == s) out.push_back(static_cast<EdgeId>(e));
  }
  return out;
}

std::uint64_t PseudoTreeStructure::hash() const {
  StructureHasher hasher;
  std::uint64_t word = 0;
  for (std::size_t v = 0; v < sides_.size(); ++v) {
    if (sides_[v] == Side::kB) word |= 1ull << (v % 64);
    if (v % 64 == 63) {
      hasher.add(word);
      word = 0;
    }
  }
  hasher.add(word);
  return hash_edge_partition(states_, hasher);
}

void PseudoTreeStructure::exchange(const MfpNetwork& net, EdgeId entering, EdgeId leaving,
                                   EdgeState leaving_to) {
  states_[static_cast<std::size_t>(entering)] = EdgeState::kTree;
  states_[static_cast<std::size_t>(leaving)] = leaving_to;
  if (entering != leaving) rebuild(net);
}

PseudoTreeStructure initial_pseudo_structure(const MfpNetwork& net) {
  if (!net.is_normalized()) {
    throw FlowError(ErrorCode::kUnnormalizedInput,
                    "initial structure requires a normalized network");
  }
  const Digraph& g = net.graph();
  const auto n = static_cast<std::size_t>(g.vertex_count());
  std::vector<EdgeState> states(static_cast<std::size_t>(g.edge_count()), EdgeState::kLower);
  std::vector<char> claimed(n, 0);
  std::vector<std::pair<VertexId, EdgeId>> neighbours;

  // B first (s is off limits), then A.
  claimed[static_cast<std::size_t>(net.source())] = 1;
  for (const VertexId root : {net.sink(), net.source()}) {
    claimed[static_cast<std::size_t>(root)] = 1;
    std::vector<VertexId> queue{root};
    for (std::size_t i = 0; i < queue.size(); ++i) {
      const VertexId v = queue[i];
      neighbours.clear();
      for (EdgeId e : g.incident(v)) neighbours.emplace_back(g.opposite(e, v), e);
      std::sort(neighbours.begin(), neighbours.end());
      for (const auto& [w, e] : neighbours) {
        if (claimed[static_cast<std::size_t>(w)]) continue;
        claimed[static_cast<std::size_t>(w)] = 1;
        states[static_cast<std::size_t>(e)] = EdgeState::kTree;
        queue.push_back(w);
      }
    }
  }
  return PseudoTreeStructure::from_states(net, std::move(states));
}

EdgeClassification classify_nontree_edges(const MfpNetwork& net, const PseudoTreeStructure& ps) {
  const Digraph& g = net.graph();
  EdgeClassification cls;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const EdgeState s = ps.state(e);
    if (s == EdgeState::kTree) continue;
    const Side from = ps.side(g.tail(e));
    const Side to = ps.side(g.head(e));
    if (from == to) {
      (from == Side::kA ? cls.within_a : cls.within_b).push_back(e);
    } else if (from == Side::kA) {
      (s == EdgeState::kLower ? cls.lower_a_to_b : cls.upper_a_to_b).push_back(e);
    } else {
      (s == EdgeState::kLower ? cls.lower_b_to_a : cls.upper_b_to_a).push_back(e);
    }
  }
  return cls;
}

std::vector<EdgeId> check_optimality_mfp(const EdgeClassification& cls) {
  std::vector<EdgeId> out;
  std::merge(cls.lower_a_to_b.begin(), cls.lower_a_to_b.end(), cls.upper_b_to_a.begin(),
             cls.upper_b_to_a.end(), std::back_inserter(out));
  return out;
}

OrientedPath find_st_path(const MfpNetwork& net, const PseudoTreeStructure& ps, EdgeId entering) {
  const Digraph& g = net.graph();
  const Arc& a = g.arc(entering);
  const EdgeState s = ps.state(entering);
  const bool tail_in_a = ps.side(a.tail) == Side::kA;
  const bool eligible = ps.side(a.tail) != ps.side(a.head) &&
                        ((s == EdgeState::kLower && tail_in_a) ||
                         (s == EdgeState::kUpper && !tail_in_a));
  if (!eligible) {
    throw FlowError(ErrorCode::kInternalInvariantViolation,
                    "entering edge is not in L_AB or U_BA", entering);
  }
  const VertexId a_end = tail_in_a ? a.tail : a.head;
  const VertexId b_end = tail_in_a ? a.head : a.tail;

  OrientedPath path{entering, {}};
  // Climb from a_end to s, then reverse so it reads s -> a_end.
  for (VertexId v = a_end; v != net.source(); v = ps.parent(v)) {
    const EdgeId e = ps.parent_edge(v);
    path.members.push_back({e, g.head(e) == v});
  }
  std::reverse(path.members.begin(), path.members.end());
  path.members.push_back({entering, tail_in_a});
  for (VertexId v = b_end; v != net.sink(); v = ps.parent(v)) {
    const EdgeId e = ps.parent_edge(v);
    path.members.push_back({e, g.tail(e) == v});
  }
  return path;
}

Augmentation augment_and_leave(const MfpNetwork& net, Flow& f, const OrientedPath& path,
                               LeavingRule rule) {
  Quantity delta = std::numeric_limits<Quantity>::max();
  std::size_t blocking = 0;
  for (std::size_t i = 0; i < path.members.size(); ++i) {
    const auto [e, forward] = path.members[i];
    const Quantity room = forward ? net.capacity(e) - f[e] : f[e];
    if (rule == LeavingRule::kFirstBlocking ? room < delta : room <= delta) {
      delta = room;
      blocking = i;
    }
  }
  for (const auto& [e, forward] : path.members) f[e] += forward ? delta : -delta;
  const OrientedEdge leaving = path.members[blocking];
  return {delta, leaving.edge, leaving.forward ? EdgeState::kUpper : EdgeState::kLower};
}

PseudoTreeStructure pivot_mfp(const MfpNetwork& net, const PseudoTreeStructure& ps,
                              EdgeId entering, const Augmentation& aug) {
  PseudoTreeStructure next = ps;
  next.exchange(net, entering, aug.leaving, aug.leaving_to);
  return next;
}

Flow pseudo_tree_solution(const MfpNetwork& net, const PseudoTreeStructure& ps) {
  const Digraph& g = net.graph();
  Flow f(static_cast<std::size_t>(g.edge_count()));
  std::vector<Quantity> need(static_cast<std::size_t>(g.vertex_count()), 0);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (ps.state(e) != EdgeState::kUpper) continue;
    f[e] = net.capacity(e);
    need[static_cast<std::size_t>(g.head(e))] -= f[e];
    need[static_cast<std::size_t>(g.tail(e))] += f[e];
  }
  const auto order = ps.order();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const VertexId v = *it;
    const EdgeId e = ps.parent_edge(v);
    if (e == kNoEdge) continue;
    const Quantity nv = need[static_cast<std::size_t>(v)];
    f[e] = g.head(e) == v ? nv : -nv;
    need[static_cast<std::size_t>(ps.parent(v))] += nv;
  }
  std::vector<EdgeId> violating;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (ps.state(e) == EdgeState::kTree && (f[e] < 0 || f[e] > net.capacity(e))) {
      violating.push_back(e);
    }
  }
  if (!violating.empty()) {
    throw InfeasibleStructure("tree edges forced outside [0, c]", std::move(violating));
  }
  return f;
}

TreeStructure to_reduced_structure(const ReducedNetwork& red, const PseudoTreeStructure& ps) {
  std::vector<EdgeState> states(ps.states().begin(), ps.states().end());
  states.push_back(EdgeState::kTree);
  return TreeStructure::from_states(red.mcfp.graph(), std::move(states), red.sink);
}

MinCut extract_min_cut(const MfpNetwork& net, const PseudoTreeStructure& ps, const Flow& f) {
  if (!check_optimality_mfp(classify_nontree_edges(net, ps)).empty()) {
    throw FlowError(ErrorCode::kNotOptimal, "L_AB or U_BA is non-empty");
  }
  const Digraph& g = net.graph();
  MinCut cut;
  cut.source_side = ps.vertices_on(Side::kA);
  cut.sink_side = ps.vertices_on(Side::kB);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (ps.side(g.tail(e)) == Side::kA && ps.side(g.head(e)) == Side::kB) {
      cut.cut_edges.push_back(e);
      cut.capacity = checked_add(cut.capacity, net.capacity(e));
      if (f[e] != net.capacity(e)) invariant_failure("cut edge is not saturated");
    }
  }
  return cut;
}

const char* to_string(MaxFlowStatus status) {
  return status == MaxFlowStatus::kOptimal ? "optimal" : "guard_tripped";
}

namespace {

Quantity default_cap(const MfpNetwork& net) {
  Quantity total = 1;
  for (Quantity c : net.capacities()) {
    if (__builtin_add_overflow(total, c, &total)) return std::numeric_limits<Quantity>::max();
  }
  Quantity cap;
  if (__builtin_mul_overflow(total, static_cast<Quantity>(net.graph().edge_count()), &cap)) {
    return std::numeric_limits<Quantity>::max();
  }
  return cap;
}

void check_pivot_invariants(const MfpNetwork& net, const PseudoTreeStructure& ps, const Flow& f,
                            const PivotRecord& rec, Quantity tau_before) {
  if (PseudoTreeStructure::from_states(net, {ps.states().begin(), ps.states().end()}) != ps) {
    invariant_failure("structure sides disagree with a fresh rebuild");
  }
  if (ps.side(net.source()) != Side::kA || ps.side(net.sink()) != Side::kB) {
    invariant_failure("s or t on the wrong side");
  }
  Flow recomputed;
  try {
    recomputed = pseudo_tree_solution(net, ps);
  } catch (const InfeasibleStructure& e) {
    invariant_failure(std::string("pivot produced an infeasible structure: ") + e.what());
  }
  if (recomputed != f) invariant_failure("incremental flow differs from tree solution");
  if (!validate_mfp_flow(net, f).ok()) invariant_failure("flow violates capacity or conservation");
  if (rec.delta < 0 || rec.tau != tau_before + rec.delta || flow_value(net, f) != rec.tau) {
    invariant_failure("tau did not advance by exactly delta");
  }
}

MinCut lift_cut(const MfpNetwork& original, const NormalizedMfp& norm,
                const PseudoTreeStructure& ps) {
  const Digraph& g = original.graph();
  std::vector<char> on_source_side(static_cast<std::size_t>(g.vertex_count()), 0);
  for (VertexId v : ps.vertices_on(Side::kA)) {
    on_source_side[static_cast<std::size_t>(norm.vertex_to_original[static_cast<std::size_t>(v)])] =
        1;
  }
  MinCut cut;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    (on_source_side[static_cast<std::size_t>(v)] ? cut.source_side : cut.sink_side).push_back(v);
  }
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (on_source_side[static_cast<std::size_t>(g.tail(e))] &&
        !on_source_side[static_cast<std::size_t>(g.head(e))]) {
      cut.cut_edges.push_back(e);
      cut.capacity = checked_add(cut.capacity, original.capacity(e));
    }
  }
  return cut;
}

}  // namespace

MaxFlowResult solve_mfp(const MfpNetwork& net, const MaxFlowOptions& options) {
  MaxFlowResult result;
  result.normalization = normalize_mfp(net);
  const MfpNetwork& norm = result.normalization.network;
  PseudoTreeStructure& ps = result.structure;
  ps = initial_pseudo_structure(norm);
  Flow f(static_cast<std::size_t>(norm.graph().edge_count()));

  const std::int64_t cap = options.pivot_cap > 0 ? options.pivot_cap : default_cap(norm);
  PivotTrace& trace = result.trace;
  trace.initial_hash = ps.hash();
  trace.initial_tau = 0;
  std::unordered_set<std::uint64_t> window{trace.initial_hash};

  if (options.observer) options.observer({norm, ps, f, nullptr});

  while (true) {
    const std::vector<EdgeId> candidates = check_optimality_mfp(classify_nontree_edges(norm, ps));
    if (candidates.empty()) break;
    if (static_cast<std::int64_t>(trace.pivots.size()) >= cap) {
      result.status = MaxFlowStatus::kGuardTripped;
      break;
    }
    const EdgeId entering = candidates.front();
    const OrientedPath path = find_st_path(norm, ps, entering);
    const Augmentation aug = augment_and_leave(norm, f, path, options.leaving);
    ps.exchange(norm, entering, aug.leaving, aug.leaving_to);

    const Quantity tau_before = result.tau;
    result.tau = checked_add(result.tau, aug.delta);
    PivotRecord rec{static_cast<std::int64_t>(trace.pivots.size()) + 1,
                    entering,
                    aug.leaving,
                    aug.delta,
                    result.tau,
                    ps.hash(),
                    aug.delta == 0};
    if (rec.degenerate) ++result.degenerate_pivots;
    trace.pivots.push_back(rec);

    if (options.check_invariants) check_pivot_invariants(norm, ps, f, rec, tau_before);
    if (options.cycling_check) {
      if (rec.tau > tau_before) window.clear();
      if (!window.insert(rec.structure_hash).second) {
        invariant_failure("structure " + hash_to_hex(rec.structure_hash) +
                          " revisited at constant tau (pivot " + std::to_string(rec.index) + ")");
      }
    }
    if (options.observer) options.observer({norm, ps, f, &trace.pivots.back()});
  }

  result.flow = result.normalization.lift(f);
  if (result.status == MaxFlowStatus::kOptimal) {
    const MinCut local = extract_min_cut(norm, ps, f);
    if (local.capacity != result.tau) invariant_failure("cut capacity differs from tau");
    result.min_cut = lift_cut(net, result.normalization, ps);
    if (result.min_cut.capacity != result.tau) {
      invariant_failure("lifted cut capacity differs from tau");
    }
  }
  return result;
}

}  // namespace nsflow
