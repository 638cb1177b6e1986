#include "nsflow/network.hpp"

#include <cassert>
#include <algorithm>
#include <string>

#include "nsflow/error.hpp"

namespace nsflow {

namespace {

void check_flow_size(const Digraph& g, const Flow& f) {
  if (f.size() != static_cast<std::size_t>(g.edge_count())) {
    throw FlowError(ErrorCode::kSizeMismatch,
                    "flow has " + std::to_string(f.size()) + " entries, graph has " +
                        std::to_string(g.edge_count()) + " edges");
  }
}

std::vector<Quantity> net_inflow(const Digraph& g, const Flow& f) {
  std::vector<Quantity> in(static_cast<std::size_t>(g.vertex_count()), 0);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    auto& h = in[static_cast<std::size_t>(g.head(e))];
    auto& t = in[static_cast<std::size_t>(g.tail(e))];
    h = checked_add(h, f[e]);
    t = checked_sub(t, f[e]);
  }
  return in;
}

// Undirected reachability from `seeds` over edges with keep[e] set.
std::vector<char> reach(const Digraph& g, std::span<const VertexId> seeds,
                        const std::vector<char>& keep) {
  std::vector<char> seen(static_cast<std::size_t>(g.vertex_count()), 0);
  std::vector<VertexId> stack(seeds.begin(), seeds.end());
  for (VertexId v : seeds) seen[static_cast<std::size_t>(v)] = 1;
  while (!stack.empty()) {
    const VertexId v = stack.back();
    stack.pop_back();
    for (EdgeId e : g.incident(v)) {
      if (!keep[static_cast<std::size_t>(e)]) continue;
      const VertexId w = g.opposite(e, v);
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = 1;
        stack.push_back(w);
      }
    }
  }
  return seen;
}

}  // namespace

McfpNetwork::McfpNetwork(Digraph graph, std::vector<Quantity> lower, std::vector<Quantity> upper,
                         std::vector<Quantity> cost, std::vector<Quantity> demand)
    : graph_(std::move(graph)),
      lower_(std::move(lower)),
      upper_(std::move(upper)),
      cost_(std::move(cost)),
      demand_(std::move(demand)) {
  const auto m = static_cast<std::size_t>(graph_.edge_count());
  if (lower_.size() != m || upper_.size() != m || cost_.size() != m) {
    throw FlowError(ErrorCode::kSizeMismatch, "edge attribute arrays must match edge count");
  }
  if (demand_.size() != static_cast<std::size_t>(graph_.vertex_count())) {
    throw FlowError(ErrorCode::kSizeMismatch, "demand array must match vertex count");
  }
  for (std::size_t e = 0; e < m; ++e) {
    if (lower_[e] < 0 || lower_[e] > upper_[e]) {
      throw FlowError(ErrorCode::kInvalidNetwork,
                      "edge " + std::to_string(e) + " violates 0 <= lower <= upper",
                      static_cast<std::int64_t>(e));
    }
  }
  Quantity total = 0;
  for (Quantity d : demand_) total = checked_add(total, d);
  if (total != 0) {
    throw FlowError(ErrorCode::kInvalidNetwork,
                    "demands sum to " + std::to_string(total) + ", expected 0");
  }
}

MfpNetwork::MfpNetwork(Digraph graph, std::vector<Quantity> capacity, VertexId source,
                       VertexId sink)
    : graph_(std::move(graph)), capacity_(std::move(capacity)), source_(source), sink_(sink) {
  if (capacity_.size() != static_cast<std::size_t>(graph_.edge_count())) {
    throw FlowError(ErrorCode::kSizeMismatch, "capacity array must match edge count");
  }
  const VertexId n = graph_.vertex_count();
  if (source_ < 0 || source_ >= n || sink_ < 0 || sink_ >= n) {
    throw FlowError(ErrorCode::kInvalidVertexId, "source or sink outside vertex range");
  }
  if (source_ == sink_) {
    throw FlowError(ErrorCode::kSourceEqualsSink, "source and sink coincide");
  }
  for (std::size_t e = 0; e < capacity_.size(); ++e) {
    if (capacity_[e] < 0) {
      throw FlowError(ErrorCode::kInvalidNetwork,
                      "edge " + std::to_string(e) + " has negative capacity",
                      static_cast<std::int64_t>(e));
    }
  }
}

bool MfpNetwork::is_normalized() const {
  for (const Arc& a : graph_.arcs()) {
    if (a.head == source_ || a.tail == sink_) return false;
  }
  const std::vector<char> keep(static_cast<std::size_t>(graph_.edge_count()), 1);
  const VertexId seeds[] = {source_, sink_};
  const auto seen = reach(graph_, seeds, keep);
  return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
}

ValidityReport validate_mcfp_flow(const McfpNetwork& net, const Flow& f) {
  const Digraph& g = net.graph();
  check_flow_size(g, f);
  ValidityReport report;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (f[e] < net.lower(e) || f[e] > net.upper(e)) {
      report.capacity.push_back({e, f[e], net.lower(e), net.upper(e)});
    }
  }
  const auto in = net_inflow(g, f);
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (in[static_cast<std::size_t>(v)] != net.demand(v)) {
      report.balance.push_back({v, in[static_cast<std::size_t>(v)], net.demand(v)});
    }
  }
  return report;
}

ValidityReport validate_mfp_flow(const MfpNetwork& net, const Flow& f) {
  const Digraph& g = net.graph();
  check_flow_size(g, f);
  ValidityReport report;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (f[e] < 0 || f[e] > net.capacity(e)) {
      report.capacity.push_back({e, f[e], 0, net.capacity(e)});
    }
  }
  const auto in = net_inflow(g, f);
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (v == net.source() || v == net.sink()) continue;
    if (in[static_cast<std::size_t>(v)] != 0) {
      report.balance.push_back({v, in[static_cast<std::size_t>(v)], 0});
    }
  }
  return report;
}

Quantity flow_value(const MfpNetwork& net, const Flow& f) {
  const Digraph& g = net.graph();
  check_flow_size(g, f);
  Quantity out_of_source = 0;
  Quantity into_sink = 0;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (g.tail(e) == net.source()) out_of_source = checked_add(out_of_source, f[e]);
    if (g.head(e) == net.source()) out_of_source = checked_sub(out_of_source, f[e]);
    if (g.head(e) == net.sink()) into_sink = checked_add(into_sink, f[e]);
    if (g.tail(e) == net.sink()) into_sink = checked_sub(into_sink, f[e]);
  }
  // Holds for any flow obeying conservation away from s and t.
  assert(!validate_mfp_flow(net, f).balance.empty() || out_of_source == into_sink);
  return out_of_source;
}

Quantity flow_cost(const McfpNetwork& net, const Flow& f) {
  check_flow_size(net.graph(), f);
  Quantity total = 0;
  for (EdgeId e = 0; e < net.graph().edge_count(); ++e) {
    total = checked_add(total, checked_mul(net.cost(e), f[e]));
  }
  return total;
}

bool NormalizedMfp::is_identity() const {
  for (std::size_t v = 0; v < vertex_to_normalized.size(); ++v) {
    if (vertex_to_normalized[v] != static_cast<VertexId>(v)) return false;
  }
  for (std::size_t e = 0; e < edge_to_normalized.size(); ++e) {
    if (edge_to_normalized[e] != static_cast<EdgeId>(e)) return false;
  }
  return true;
}

Flow NormalizedMfp::lift(const Flow& normalized_flow) const {
  if (normalized_flow.size() != edge_to_original.size()) {
    throw FlowError(ErrorCode::kSizeMismatch, "flow does not match the normalized network");
  }
  Flow out(edge_to_normalized.size());
  for (std::size_t e = 0; e < edge_to_original.size(); ++e) {
    out[edge_to_original[e]] = normalized_flow[static_cast<EdgeId>(e)];
  }
  return out;
}

NormalizedMfp normalize_mfp(const MfpNetwork& net) {
  const Digraph& g = net.graph();
  const VertexId s = net.source();
  const VertexId t = net.sink();

  std::vector<char> keep_edge(static_cast<std::size_t>(g.edge_count()), 0);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Arc& a = g.arc(e);
    keep_edge[static_cast<std::size_t>(e)] = a.head != s && a.tail != t && a.head != a.tail;
  }
  const VertexId seeds[] = {s, t};
  const auto keep_vertex = reach(g, seeds, keep_edge);

  NormalizedMfp out;
  out.vertex_to_normalized.assign(static_cast<std::size_t>(g.vertex_count()), kNoVertex);
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (keep_vertex[static_cast<std::size_t>(v)]) {
      out.vertex_to_normalized[static_cast<std::size_t>(v)] =
          static_cast<VertexId>(out.vertex_to_original.size());
      out.vertex_to_original.push_back(v);
    }
  }

  std::vector<Arc> arcs;
  std::vector<Quantity> capacity;
  out.edge_to_normalized.assign(static_cast<std::size_t>(g.edge_count()), kNoEdge);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Arc& a = g.arc(e);
    // An edge survives only if both endpoints do; a kept edge with a removed
    // endpoint cannot exist since reachability runs over kept edges.
    if (!keep_edge[static_cast<std::size_t>(e)] || !keep_vertex[static_cast<std::size_t>(a.tail)]) {
      continue;
    }
    out.edge_to_normalized[static_cast<std::size_t>(e)] = static_cast<EdgeId>(arcs.size());
    out.edge_to_original.push_back(e);
    arcs.push_back({out.vertex_to_normalized[static_cast<std::size_t>(a.tail)],
                    out.vertex_to_normalized[static_cast<std::size_t>(a.head)]});
    capacity.push_back(net.capacity(e));
  }

  out.network = MfpNetwork(Digraph::build(static_cast<VertexId>(out.vertex_to_original.size()),
                                          std::move(arcs)),
                           std::move(capacity), out.vertex_to_normalized[static_cast<std::size_t>(s)],
                           out.vertex_to_normalized[static_cast<std::size_t>(t)]);
  return out;
}

}  // namespace nsflow
