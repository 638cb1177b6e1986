#include "nsflow/reduction.hpp"

#include "nsflow/error.hpp"

namespace nsflow {

ReducedNetwork mfp_to_mcfp(const MfpNetwork& net) {
  if (!net.is_normalized()) {
    throw FlowError(ErrorCode::kUnnormalizedInput,
                    "reduction requires no edges into s, none out of t, and no stray vertices");
  }
  const Digraph& g = net.graph();
  const EdgeId m = g.edge_count();

  std::vector<Arc> arcs(g.arcs().begin(), g.arcs().end());
  std::vector<Quantity> upper(net.capacities().begin(), net.capacities().end());
  std::vector<Quantity> cost(static_cast<std::size_t>(m) + 1, 0);
  Quantity big_m = 1;
  for (EdgeId e = 0; e < m; ++e) {
    if (g.head(e) == net.sink()) cost[static_cast<std::size_t>(e)] = -1;
    if (g.tail(e) == net.source()) big_m = checked_add(big_m, net.capacity(e));
  }
  arcs.push_back({net.sink(), net.source()});
  upper.push_back(big_m);

  ReducedNetwork red;
  red.return_edge = m;
  red.source = net.source();
  red.sink = net.sink();
  red.big_m = big_m;
  red.mcfp = McfpNetwork(Digraph::build(g.vertex_count(), std::move(arcs)),
                         std::vector<Quantity>(static_cast<std::size_t>(m) + 1, 0),
                         std::move(upper), std::move(cost),
                         std::vector<Quantity>(static_cast<std::size_t>(g.vertex_count()), 0));
  return red;
}

Flow lift_flow(const ReducedNetwork& red, const MfpNetwork& net, const Flow& f) {
  if (f.size() != static_cast<std::size_t>(red.return_edge)) {
    throw FlowError(ErrorCode::kSizeMismatch, "flow does not match the max-flow network");
  }
  std::vector<Quantity> values(f.values().begin(), f.values().end());
  values.push_back(flow_value(net, f));
  return Flow(std::move(values));
}

RestrictedFlow restrict_flow(const ReducedNetwork& red, const Flow& lifted) {
  if (lifted.size() != static_cast<std::size_t>(red.return_edge) + 1) {
    throw FlowError(ErrorCode::kSizeMismatch, "flow does not match the reduced network");
  }
  std::vector<Quantity> values(lifted.values().begin(), lifted.values().end() - 1);
  return {Flow(std::move(values)), lifted[red.return_edge]};
}

ReferenceMaxFlow solve_mfp_via_mcfp(const MfpNetwork& net, const McfpSolveOptions& options) {
  const NormalizedMfp norm = normalize_mfp(net);
  const ReducedNetwork red = mfp_to_mcfp(norm.network);

  McfpSolveOptions opts = options;
  opts.base_vertex = red.sink;
  const McfpSolveResult solved = solve_mcfp(red.mcfp, opts);

  ReferenceMaxFlow out;
  out.status = solved.status;
  out.pivots = static_cast<std::int64_t>(solved.trace.size());
  out.degenerate_pivots = solved.degenerate_pivots;
  const RestrictedFlow restricted = restrict_flow(red, solved.flow);
  out.tau = restricted.tau;
  out.flow = norm.lift(restricted.flow);
  return out;
}

}  // namespace nsflow
