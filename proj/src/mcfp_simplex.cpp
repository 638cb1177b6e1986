#include "nsflow/mcfp_simplex.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <string>

#include "nsflow/error.hpp"

namespace nsflow {

namespace {

[[noreturn]] void invariant_failure(const std::string& what) {
  throw FlowError(ErrorCode::kInternalInvariantViolation, what);
}

Quantity saturating_mul(Quantity a, Quantity b) {
  Quantity out;
  if (__builtin_mul_overflow(a, b, &out)) return std::numeric_limits<Quantity>::max();
  return out;
}

}  // namespace

TreeStructure TreeStructure::from_states(const Digraph& g, std::vector<EdgeState> states,
                                         VertexId root) {
  if (states.size() != static_cast<std::size_t>(g.edge_count())) {
    throw FlowError(ErrorCode::kSizeMismatch, "edge state array must match edge count");
  }
  if (root < 0 || root >= g.vertex_count()) {
    throw FlowError(ErrorCode::kInvalidVertexId, "tree root outside vertex range");
  }
  TreeStructure ts;
  ts.states_ = std::move(states);
  ts.root_ = root;
  ts.rebuild(g);
  return ts;
}

std::vector<EdgeId> TreeStructure::edges_in(EdgeState s) const {
  std::vector<EdgeId> out;
  for (std::size_t e = 0; e < states_.size(); ++e) {
    if (states_[e] == s) out.push_back(static_cast<EdgeId>(e));
  }
  return out;
}

void TreeStructure::rebuild(const Digraph& g) {
  const auto n = static_cast<std::size_t>(g.vertex_count());
  const auto tree_size = std::count(states_.begin(), states_.end(), EdgeState::kTree);
  if (static_cast<std::size_t>(tree_size) + 1 != n) {
    throw FlowError(ErrorCode::kInvalidNetwork,
                    "tree has " + std::to_string(tree_size) + " edges, expected " +
                        std::to_string(n - 1));
  }
  parent_.assign(n, kNoVertex);
  parent_edge_.assign(n, kNoEdge);
  depth_.assign(n, -1);
  order_.clear();
  order_.reserve(n);

  depth_[static_cast<std::size_t>(root_)] = 0;
  order_.push_back(root_);
  for (std::size_t head = 0; head < order_.size(); ++head) {
    const VertexId v = order_[head];
    for (EdgeId e : g.incident(v)) {
      if (state(e) != EdgeState::kTree || e == parent_edge(v)) continue;
      const VertexId w = g.opposite(e, v);
      if (depth_[static_cast<std::size_t>(w)] >= 0) {
        throw FlowError(ErrorCode::kInvalidNetwork, "tree edges contain a cycle", e);
      }
      depth_[static_cast<std::size_t>(w)] = depth(v) + 1;
      parent_[static_cast<std::size_t>(w)] = v;
      parent_edge_[static_cast<std::size_t>(w)] = e;
      order_.push_back(w);
    }
  }
  if (order_.size() != n) {
    throw FlowError(ErrorCode::kInvalidNetwork, "tree edges do not span the graph");
  }
}

void TreeStructure::exchange(const Digraph& g, EdgeId entering, EdgeId leaving,
                             EdgeState leaving_to) {
  states_[static_cast<std::size_t>(entering)] = EdgeState::kTree;
  states_[static_cast<std::size_t>(leaving)] = leaving_to;
  if (entering != leaving) rebuild(g);
}

Potential compute_potential(const McfpNetwork& net, const TreeStructure& ts, VertexId base) {
  const Digraph& g = net.graph();
  Potential pot{base, std::vector<Quantity>(static_cast<std::size_t>(g.vertex_count()), 0)};
  for (VertexId v : ts.order()) {
    const EdgeId e = ts.parent_edge(v);
    if (e == kNoEdge) continue;
    const Quantity up = pot[ts.parent(v)];
    // Forward edges add their cost, backward edges subtract it.
    pot.value[static_cast<std::size_t>(v)] =
        g.tail(e) == ts.parent(v) ? checked_add(up, net.cost(e)) : checked_sub(up, net.cost(e));
  }
  const Quantity shift = pot[base];
  for (Quantity& p : pot.value) p = checked_sub(p, shift);
  return pot;
}

Quantity reduced_cost(const McfpNetwork& net, const Potential& pot, EdgeId e) {
  const Arc& a = net.graph().arc(e);
  return checked_sub(checked_add(net.cost(e), pot[a.tail]), pot[a.head]);
}

Flow tree_solution(const McfpNetwork& net, const TreeStructure& ts) {
  const Digraph& g = net.graph();
  Flow f(static_cast<std::size_t>(g.edge_count()));
  // need[v]: net inflow v must still receive through tree edges.
  std::vector<Quantity> need(net.demands().begin(), net.demands().end());
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const EdgeState s = ts.state(e);
    if (s == EdgeState::kTree) continue;
    f[e] = s == EdgeState::kLower ? net.lower(e) : net.upper(e);
    auto& h = need[static_cast<std::size_t>(g.head(e))];
    auto& t = need[static_cast<std::size_t>(g.tail(e))];
    h = checked_sub(h, f[e]);
    t = checked_add(t, f[e]);
  }

  const auto order = ts.order();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const VertexId v = *it;
    const EdgeId e = ts.parent_edge(v);
    if (e == kNoEdge) continue;
    const VertexId p = ts.parent(v);
    const Quantity nv = need[static_cast<std::size_t>(v)];
    auto& np = need[static_cast<std::size_t>(p)];
    if (g.head(e) == v) {
      f[e] = nv;
      np = checked_add(np, nv);
    } else {
      f[e] = -nv;
      np = checked_add(np, nv);
    }
    need[static_cast<std::size_t>(v)] = 0;
  }
  if (need[static_cast<std::size_t>(ts.root())] != 0) {
    invariant_failure("demands do not balance at the tree root");
  }

  std::vector<EdgeId> violating;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (ts.state(e) == EdgeState::kTree && (f[e] < net.lower(e) || f[e] > net.upper(e))) {
      violating.push_back(e);
    }
  }
  if (!violating.empty()) {
    throw InfeasibleStructure(
        std::to_string(violating.size()) + " tree edge(s) forced outside their bounds",
        std::move(violating));
  }
  return f;
}

std::vector<EdgeId> check_optimality(const McfpNetwork& net, const TreeStructure& ts,
                                     const Potential& pot) {
  std::vector<EdgeId> out;
  for (EdgeId e = 0; e < net.graph().edge_count(); ++e) {
    const EdgeState s = ts.state(e);
    if (s == EdgeState::kTree) continue;
    const Quantity rc = reduced_cost(net, pot, e);
    if ((s == EdgeState::kLower && rc < 0) || (s == EdgeState::kUpper && rc > 0)) {
      out.push_back(e);
    }
  }
  return out;
}

OrientedCircuit find_circuit(const Digraph& g, const TreeStructure& ts, EdgeId entering) {
  const EdgeState s = ts.state(entering);
  if (s == EdgeState::kTree) {
    throw FlowError(ErrorCode::kInternalInvariantViolation, "entering edge is already in T",
                    entering);
  }
  const bool along = s == EdgeState::kLower;
  OrientedCircuit circuit{entering, {{entering, along}}};

  // After crossing the entering edge we stand at `from` and return to `to`.
  VertexId from = along ? g.head(entering) : g.tail(entering);
  VertexId to = along ? g.tail(entering) : g.head(entering);

  std::vector<OrientedEdge> descent;
  while (ts.depth(from) > ts.depth(to)) {
    const EdgeId e = ts.parent_edge(from);
    circuit.members.push_back({e, g.tail(e) == from});
    from = ts.parent(from);
  }
  while (ts.depth(to) > ts.depth(from)) {
    const EdgeId e = ts.parent_edge(to);
    descent.push_back({e, g.head(e) == to});
    to = ts.parent(to);
  }
  while (from != to) {
    const EdgeId ef = ts.parent_edge(from);
    circuit.members.push_back({ef, g.tail(ef) == from});
    from = ts.parent(from);
    const EdgeId et = ts.parent_edge(to);
    descent.push_back({et, g.head(et) == to});
    to = ts.parent(to);
  }
  circuit.members.insert(circuit.members.end(), descent.rbegin(), descent.rend());
  return circuit;
}

McfpPivotRecord pivot(const McfpNetwork& net, TreeStructure& ts, Flow& f, EdgeId entering,
                      LeavingRule rule) {
  const Digraph& g = net.graph();
  const OrientedCircuit circuit = find_circuit(g, ts, entering);

  Quantity delta = kUnboundedCapacity;
  std::size_t blocking = circuit.members.size();
  for (std::size_t i = 0; i < circuit.members.size(); ++i) {
    const auto [e, forward] = circuit.members[i];
    if (forward && net.upper(e) == kUnboundedCapacity) continue;
    const Quantity room = forward ? net.upper(e) - f[e] : f[e] - net.lower(e);
    const bool better = rule == LeavingRule::kFirstBlocking ? room < delta : room <= delta;
    if (better) {
      delta = room;
      blocking = i;
    }
  }
  if (blocking == circuit.members.size()) {
    throw FlowError(ErrorCode::kUnboundedDirection, "circuit has no blocking edge", entering);
  }

  Quantity unit_cost = 0;
  for (const auto& [e, forward] : circuit.members) {
    unit_cost = forward ? checked_add(unit_cost, net.cost(e)) : checked_sub(unit_cost, net.cost(e));
  }
  for (const auto& [e, forward] : circuit.members) {
    f[e] = forward ? checked_add(f[e], delta) : checked_sub(f[e], delta);
  }

  const OrientedEdge leaving = circuit.members[blocking];
  ts.exchange(g, entering, leaving.edge, leaving.forward ? EdgeState::kUpper : EdgeState::kLower);

  McfpPivotRecord rec;
  rec.entering = entering;
  rec.leaving = leaving.edge;
  rec.delta = delta;
  rec.cost_change = checked_mul(delta, unit_cost);
  rec.structure_hash = ts.hash();
  rec.degenerate = delta == 0;
  return rec;
}

AugmentedMcfp initial_structure_bigM(const McfpNetwork& net, VertexId root) {
  const Digraph& g = net.graph();
  const VertexId n = g.vertex_count();
  const EdgeId m = g.edge_count();
  const VertexId art = n;

  // Imbalance left after fixing every original edge at its lower bound.
  std::vector<Quantity> need(net.demands().begin(), net.demands().end());
  Quantity big_cost = 1;
  Quantity art_upper = 0;
  for (EdgeId e = 0; e < m; ++e) {
    need[static_cast<std::size_t>(g.head(e))] =
        checked_sub(need[static_cast<std::size_t>(g.head(e))], net.lower(e));
    need[static_cast<std::size_t>(g.tail(e))] =
        checked_add(need[static_cast<std::size_t>(g.tail(e))], net.lower(e));
    big_cost = checked_add(big_cost, checked_mul(checked_abs(net.cost(e)), net.upper(e)));
    art_upper = checked_add(art_upper, net.upper(e) - net.lower(e));
  }
  for (Quantity x : need) art_upper = checked_add(art_upper, checked_abs(x));

  std::vector<Arc> arcs(g.arcs().begin(), g.arcs().end());
  std::vector<Quantity> lower(net.lowers().begin(), net.lowers().end());
  std::vector<Quantity> upper(net.uppers().begin(), net.uppers().end());
  std::vector<Quantity> cost(net.costs().begin(), net.costs().end());
  std::vector<Quantity> demand(net.demands().begin(), net.demands().end());
  demand.push_back(0);

  std::vector<Quantity> flow(net.lowers().begin(), net.lowers().end());
  for (VertexId v = 0; v < n; ++v) {
    const Quantity x = need[static_cast<std::size_t>(v)];
    // Vertices short of inflow are fed from the artificial vertex; the rest
    // drain into it.
    arcs.push_back(x > 0 ? Arc{art, v} : Arc{v, art});
    lower.push_back(0);
    upper.push_back(art_upper);
    cost.push_back(big_cost);
    flow.push_back(x > 0 ? x : -x);
  }

  AugmentedMcfp out;
  out.network = McfpNetwork(Digraph::build(n + 1, std::move(arcs)), std::move(lower),
                            std::move(upper), std::move(cost), std::move(demand));
  out.artificial_root = art;
  out.first_artificial = m;
  out.artificial_cost = big_cost;

  std::vector<EdgeState> states(static_cast<std::size_t>(m), EdgeState::kLower);
  states.resize(static_cast<std::size_t>(m + n), EdgeState::kTree);
  const VertexId tree_root = (root == kNoVertex || n == 0) ? art : root;
  out.structure = TreeStructure::from_states(out.network.graph(), std::move(states), tree_root);
  out.flow = Flow(std::move(flow));
  return out;
}

const char* to_string(McfpStatus status) {
  switch (status) {
    case McfpStatus::kOptimal: return "optimal";
    case McfpStatus::kInfeasible: return "infeasible";
    case McfpStatus::kGuardTripped: return "guard_tripped";
  }
  return "unknown";
}

namespace {

EdgeId select_entering(const McfpNetwork& net, const TreeStructure& ts, const Potential& pot,
                       EnteringRule rule) {
  EdgeId best = kNoEdge;
  Quantity best_violation = 0;
  for (EdgeId e = 0; e < net.graph().edge_count(); ++e) {
    const EdgeState s = ts.state(e);
    if (s == EdgeState::kTree) continue;
    const Quantity rc = reduced_cost(net, pot, e);
    const Quantity violation = s == EdgeState::kLower ? -rc : rc;
    if (violation <= 0) continue;
    if (rule == EnteringRule::kFirstEligible) return e;
    if (violation > best_violation) {
      best = e;
      best_violation = violation;
    }
  }
  return best;
}

void check_pivot_invariants(const AugmentedMcfp& aug, const McfpPivotRecord& rec,
                            Quantity cost_before) {
  const McfpNetwork& net = aug.network;
  Flow recomputed;
  try {
    recomputed = tree_solution(net, aug.structure);
  } catch (const InfeasibleStructure& e) {
    invariant_failure(std::string("pivot produced an infeasible structure: ") + e.what());
  }
  if (recomputed != aug.flow) invariant_failure("incremental flow differs from tree solution");
  if (!validate_mcfp_flow(net, aug.flow).ok()) invariant_failure("flow violates bounds or demands");
  if (flow_cost(net, aug.flow) != rec.cost) invariant_failure("tracked cost drifted");
  if (rec.cost > cost_before || (rec.delta > 0 && rec.cost >= cost_before)) {
    invariant_failure("pivot did not improve the cost");
  }
  const Potential pot = compute_potential(net, aug.structure, aug.structure.root());
  for (EdgeId e : aug.structure.edges_in(EdgeState::kTree)) {
    if (reduced_cost(net, pot, e) != 0) invariant_failure("tree edge has nonzero reduced cost");
  }
}

}  // namespace

McfpSolveResult solve_mcfp(const McfpNetwork& net, const McfpSolveOptions& options) {
  const VertexId n = net.graph().vertex_count();
  if (n > 0 && (options.base_vertex < 0 || options.base_vertex >= n)) {
    throw FlowError(ErrorCode::kInvalidVertexId, "base vertex outside vertex range");
  }

  McfpSolveResult result;
  result.augmented = initial_structure_bigM(net, n > 0 ? options.base_vertex : kNoVertex);
  AugmentedMcfp& aug = result.augmented;
  const McfpNetwork& anet = aug.network;

  std::int64_t cap = options.pivot_cap;
  if (cap <= 0) {
    Quantity total_upper = 0;
    for (Quantity c : net.uppers()) total_upper = checked_add(total_upper, c);
    cap = saturating_mul(saturating_mul(10, anet.graph().edge_count()),
                         total_upper == std::numeric_limits<Quantity>::max() ? total_upper
                                                                             : total_upper + 1);
  }

  Quantity cost = flow_cost(anet, aug.flow);
  if (options.observer) options.observer({aug, aug.structure, aug.flow, nullptr});

  while (true) {
    const Potential pot = compute_potential(anet, aug.structure, aug.structure.root());
    const EdgeId entering = select_entering(anet, aug.structure, pot, options.entering);
    if (entering == kNoEdge) break;
    if (static_cast<std::int64_t>(result.trace.size()) >= cap) {
      result.status = McfpStatus::kGuardTripped;
      break;
    }
    McfpPivotRecord rec = pivot(anet, aug.structure, aug.flow, entering, options.leaving);
    const Quantity before = cost;
    cost = checked_add(cost, rec.cost_change);
    rec.cost = cost;
    if (options.check_invariants) check_pivot_invariants(aug, rec, before);
    if (rec.degenerate) ++result.degenerate_pivots;
    result.trace.push_back(rec);
    if (options.observer) options.observer({aug, aug.structure, aug.flow, &result.trace.back()});
  }

  const EdgeId m = net.graph().edge_count();
  std::vector<Quantity> real(aug.flow.values().begin(), aug.flow.values().begin() + m);
  result.flow = Flow(std::move(real));
  result.cost = flow_cost(net, result.flow);
  if (result.status == McfpStatus::kOptimal) {
    for (EdgeId e = m; e < anet.graph().edge_count(); ++e) {
      if (aug.flow[e] > 0) {
        result.status = McfpStatus::kInfeasible;
        break;
      }
    }
  }
  return result;
}

}  // namespace nsflow
