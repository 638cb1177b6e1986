#include "nsflow/digraph.hpp"

#include "nsflow/error.hpp"

namespace nsflow {

Digraph Digraph::build(VertexId vertex_count, std::vector<Arc> edges) {
  if (vertex_count < 0) {
    throw FlowError(ErrorCode::kInvalidVertexId, "negative vertex count");
  }
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Arc& a = edges[i];
    const auto idx = static_cast<std::int64_t>(i);
    if (a.tail < 0 || a.tail >= vertex_count || a.head < 0 || a.head >= vertex_count) {
      throw FlowError(ErrorCode::kInvalidVertexId,
                      "edge " + std::to_string(i) + " has an endpoint outside [0, " +
                          std::to_string(vertex_count) + ")",
                      idx);
    }
    if (a.tail == a.head) {
      throw FlowError(ErrorCode::kSelfLoop, "edge " + std::to_string(i) + " is a self-loop",
                      idx);
    }
  }

  Digraph g;
  g.vertex_count_ = vertex_count;
  g.arcs_ = std::move(edges);

  // Counting sort into CSR incidence lists; edge ids stay ascending per vertex.
  const auto n = static_cast<std::size_t>(vertex_count);
  g.incidence_offset_.assign(n + 1, 0);
  for (const Arc& a : g.arcs_) {
    ++g.incidence_offset_[static_cast<std::size_t>(a.tail) + 1];
    ++g.incidence_offset_[static_cast<std::size_t>(a.head) + 1];
  }
  for (std::size_t v = 0; v < n; ++v) g.incidence_offset_[v + 1] += g.incidence_offset_[v];
  g.incidence_.resize(g.incidence_offset_[n]);
  std::vector<std::size_t> cursor(g.incidence_offset_.begin(), g.incidence_offset_.end() - 1);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Arc& a = g.arc(e);
    g.incidence_[cursor[static_cast<std::size_t>(a.tail)]++] = e;
    g.incidence_[cursor[static_cast<std::size_t>(a.head)]++] = e;
  }
  return g;
}

}  // namespace nsflow
