#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace nsflow {

using VertexId = std::int32_t;
using EdgeId = std::int32_t;

inline constexpr VertexId kNoVertex = -1;
inline constexpr EdgeId kNoEdge = -1;

struct Arc {
  VertexId tail;
  VertexId head;

  friend bool operator==(const Arc&, const Arc&) = default;
};

// Immutable directed multigraph. Edge identity is the position in the edge
// list; parallel edges are allowed, self-loops are not.
class Digraph {
 public:
  Digraph() = default;

  // Throws FlowError{kSelfLoop | kInvalidVertexId} with the edge index.
  static Digraph build(VertexId vertex_count, std::vector<Arc> edges);

  VertexId vertex_count() const { return vertex_count_; }
  EdgeId edge_count() const { return static_cast<EdgeId>(arcs_.size()); }

  VertexId tail(EdgeId e) const { return arcs_[static_cast<std::size_t>(e)].tail; }
  VertexId head(EdgeId e) const { return arcs_[static_cast<std::size_t>(e)].head; }
  const Arc& arc(EdgeId e) const { return arcs_[static_cast<std::size_t>(e)]; }
  std::span<const Arc> arcs() const { return arcs_; }

  // Given one endpoint of e, returns the other.
  VertexId opposite(EdgeId e, VertexId v) const {
    const Arc& a = arc(e);
    return a.tail == v ? a.head : a.tail;
  }

  // Incident edge ids per vertex (both directions), ascending edge id.
  std::span<const EdgeId> incident(VertexId v) const {
    const auto b = incidence_offset_[static_cast<std::size_t>(v)];
    const auto e = incidence_offset_[static_cast<std::size_t>(v) + 1];
    return std::span<const EdgeId>(incidence_).subspan(b, e - b);
  }

  friend bool operator==(const Digraph& a, const Digraph& b) {
    return a.vertex_count_ == b.vertex_count_ && a.arcs_ == b.arcs_;
  }

 private:
  VertexId vertex_count_ = 0;
  std::vector<Arc> arcs_;
  std::vector<std::size_t> incidence_offset_{0};
  std::vector<EdgeId> incidence_;
};

}  // namespace nsflow
