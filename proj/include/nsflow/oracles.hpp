#pragma once

#include <cstdint>
#include <optional>
#include <random>

#include "nsflow/network.hpp"

// Reference solvers and instance generators. Nothing here shares traversal
// code with the simplex solvers.
namespace nsflow::oracles {

struct MaxFlowValue {
  Quantity tau = 0;
  Flow flow;
};

// Shortest augmenting paths on an explicit residual graph. Accepts
// unnormalized networks.
MaxFlowValue edmonds_karp(const MfpNetwork& net);

struct McfpOptimum {
  Quantity cost = 0;
  Flow flow;
};

inline constexpr EdgeId kBruteForceMaxEdges = 10;
inline constexpr std::int64_t kBruteForceMaxAssignments = 10'000'000;

// Exhaustive search over all integer assignments within bounds. Returns
// nullopt when no assignment meets the demands. Throws kTooLarge beyond
// kBruteForceMaxEdges edges or kBruteForceMaxAssignments assignments.
std::optional<McfpOptimum> brute_force_mcfp(const McfpNetwork& net);

inline constexpr VertexId kMinCutMaxVertices = 12;

// Minimum over all s-t bipartitions of the capacity of edges leaving the
// source side. Throws kTooLarge above kMinCutMaxVertices vertices.
Quantity enumerate_min_cut(const MfpNetwork& net);

struct InstanceParams {
  VertexId min_vertices = 2;
  VertexId max_vertices = 50;
  EdgeId min_edges = 1;
  EdgeId max_edges = 200;
  Quantity max_capacity = 20;
  double zero_capacity_probability = 0.2;
  // Only the planted s -> ... -> t path, no extra edges.
  bool backbone_only = false;
  std::uint64_t seed = 0;
};

// Deterministic for a fixed seed. Source is vertex 0, sink is the last
// vertex. A path from s to t through a random subset of the other vertices
// is always planted; remaining edges join random distinct endpoints and may
// enter s or leave t.
MfpNetwork random_network(const InstanceParams& params);

struct McfpInstanceParams {
  VertexId vertices = 4;
  EdgeId max_edges = 8;
  Quantity max_capacity = 3;
  Quantity max_abs_cost = 5;
  // Probability that demands are derived from a random in-bounds assignment
  // (always feasible) rather than drawn independently (often infeasible).
  double feasible_probability = 0.5;
  std::uint64_t seed = 0;
};

McfpNetwork random_mcfp(const McfpInstanceParams& params);

// Random valid flow on a max-flow network, built by pushing random amounts
// along random residual walks from s that end at t or close a cycle.
Flow random_feasible_flow(const MfpNetwork& net, std::mt19937_64& rng, int walks = 8);

}  // namespace nsflow::oracles
