#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "nsflow/checked.hpp"
#include "nsflow/digraph.hpp"

namespace nsflow {

// Edge-indexed integer flow values.
class Flow {
 public:
  Flow() = default;
  explicit Flow(std::size_t edge_count) : values_(edge_count, 0) {}
  explicit Flow(std::vector<Quantity> values) : values_(std::move(values)) {}

  std::size_t size() const { return values_.size(); }
  Quantity operator[](EdgeId e) const { return values_[static_cast<std::size_t>(e)]; }
  Quantity& operator[](EdgeId e) { return values_[static_cast<std::size_t>(e)]; }
  std::span<const Quantity> values() const { return values_; }

  friend bool operator==(const Flow&, const Flow&) = default;

 private:
  std::vector<Quantity> values_;
};

// Minimum cost flow instance: bounds b(e) <= c(e), signed integer costs, and
// vertex demands d(v) = inflow(v) - outflow(v) summing to zero.
class McfpNetwork {
 public:
  McfpNetwork() = default;

  // Throws FlowError{kSizeMismatch | kInvalidNetwork}.
  McfpNetwork(Digraph graph, std::vector<Quantity> lower, std::vector<Quantity> upper,
              std::vector<Quantity> cost, std::vector<Quantity> demand);

  const Digraph& graph() const { return graph_; }
  Quantity lower(EdgeId e) const { return lower_[static_cast<std::size_t>(e)]; }
  Quantity upper(EdgeId e) const { return upper_[static_cast<std::size_t>(e)]; }
  Quantity cost(EdgeId e) const { return cost_[static_cast<std::size_t>(e)]; }
  Quantity demand(VertexId v) const { return demand_[static_cast<std::size_t>(v)]; }

  std::span<const Quantity> lowers() const { return lower_; }
  std::span<const Quantity> uppers() const { return upper_; }
  std::span<const Quantity> costs() const { return cost_; }
  std::span<const Quantity> demands() const { return demand_; }

  friend bool operator==(const McfpNetwork&, const McfpNetwork&) = default;

 private:
  Digraph graph_;
  std::vector<Quantity> lower_;
  std::vector<Quantity> upper_;
  std::vector<Quantity> cost_;
  std::vector<Quantity> demand_;
};

// Maximum flow instance (G, c, s, t).
class MfpNetwork {
 public:
  MfpNetwork() = default;

  // Throws FlowError{kSizeMismatch | kInvalidNetwork | kInvalidVertexId |
  // kSourceEqualsSink}.
  MfpNetwork(Digraph graph, std::vector<Quantity> capacity, VertexId source, VertexId sink);

  const Digraph& graph() const { return graph_; }
  Quantity capacity(EdgeId e) const { return capacity_[static_cast<std::size_t>(e)]; }
  std::span<const Quantity> capacities() const { return capacity_; }
  VertexId source() const { return source_; }
  VertexId sink() const { return sink_; }

  // No edge enters s, no edge leaves t, and every vertex is joined to s or t
  // in the underlying undirected graph.
  bool is_normalized() const;

  friend bool operator==(const MfpNetwork&, const MfpNetwork&) = default;

 private:
  Digraph graph_;
  std::vector<Quantity> capacity_;
  VertexId source_ = 0;
  VertexId sink_ = 1;
};

struct CapacityViolation {
  EdgeId edge;
  Quantity value;
  Quantity lower;
  Quantity upper;
};

struct BalanceViolation {
  VertexId vertex;
  Quantity net_inflow;
  Quantity expected;
};

struct ValidityReport {
  std::vector<CapacityViolation> capacity;
  std::vector<BalanceViolation> balance;

  bool ok() const { return capacity.empty() && balance.empty(); }
};

ValidityReport validate_mcfp_flow(const McfpNetwork& net, const Flow& f);
ValidityReport validate_mfp_flow(const MfpNetwork& net, const Flow& f);

// Net outflow of the source. On a normalized network this is the sum of flow
// on edges leaving s.
Quantity flow_value(const MfpNetwork& net, const Flow& f);

// Exact sum of cost(e) * f(e); throws kArithmeticOverflow.
Quantity flow_cost(const McfpNetwork& net, const Flow& f);

// Result of normalize_mfp. Vertex and edge maps run both ways; entries for
// removed items in the `*_to_normalized` maps are kNoVertex / kNoEdge.
struct NormalizedMfp {
  MfpNetwork network;
  std::vector<VertexId> vertex_to_normalized;
  std::vector<VertexId> vertex_to_original;
  std::vector<EdgeId> edge_to_normalized;
  std::vector<EdgeId> edge_to_original;

  bool is_identity() const;

  // Extends a flow on the normalized network to the original, with zero on
  // removed edges.
  Flow lift(const Flow& normalized_flow) const;
};

// Drops edges with head s or tail t, then vertices (with their edges) that
// are not joined to {s, t}. Surviving vertices and edges keep their relative
// order, so an already-normalized network maps to itself.
NormalizedMfp normalize_mfp(const MfpNetwork& net);

}  // namespace nsflow
