#pragma once

#include "nsflow/mcfp_simplex.hpp"
#include "nsflow/network.hpp"

namespace nsflow {

// Max-flow network recast as a min-cost circulation: a return edge r = (t, s)
// is appended, all lower bounds and demands are zero, and every edge into t
// costs -1 (all others 0). Original edge ids are preserved.
struct ReducedNetwork {
  McfpNetwork mcfp;
  EdgeId return_edge = kNoEdge;
  VertexId source = kNoVertex;
  VertexId sink = kNoVertex;
  // Capacity of r: 1 + total capacity leaving s.
  Quantity big_m = 0;
};

// Throws kUnnormalizedInput unless net.is_normalized().
ReducedNetwork mfp_to_mcfp(const MfpNetwork& net);

// Extends f with f'(r) = flow_value(f).
Flow lift_flow(const ReducedNetwork& red, const MfpNetwork& net, const Flow& f);

struct RestrictedFlow {
  Flow flow;
  Quantity tau = 0;
};

// Drops r; tau is the flow it carried.
RestrictedFlow restrict_flow(const ReducedNetwork& red, const Flow& lifted);

struct ReferenceMaxFlow {
  McfpStatus status = McfpStatus::kOptimal;
  Quantity tau = 0;
  // On the network passed in (unnormalized networks are normalized first and
  // the answer lifted back).
  Flow flow;
  std::int64_t pivots = 0;
  std::int64_t degenerate_pivots = 0;
};

// Maximum flow as minus the optimal cost of the reduced network, solved by the
// generic simplex with the sink as base vertex.
ReferenceMaxFlow solve_mfp_via_mcfp(const MfpNetwork& net, const McfpSolveOptions& options = {});

}  // namespace nsflow
