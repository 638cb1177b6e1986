#include "nsflow/maxflow_simplex.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "nsflow/error.hpp"
#include "nsflow/oracles.hpp"
#include "nsflow/reduction.hpp"
#include "test_networks.hpp"

namespace nsflow {
namespace {

using testing::diamond;
using testing::make_mfp;
using testing::single_edge;

std::vector<EdgeState> states_from(EdgeId m, std::initializer_list<EdgeId> tree,
                                   std::initializer_list<EdgeId> upper = {}) {
  std::vector<EdgeState> s(static_cast<std::size_t>(m), EdgeState::kLower);
  for (EdgeId e : tree) s[static_cast<std::size_t>(e)] = EdgeState::kTree;
  for (EdgeId e : upper) s[static_cast<std::size_t>(e)] = EdgeState::kUpper;
  return s;
}

// Vertices joined to `root` by tree edges.
std::set<VertexId> tree_component(const MfpNetwork& net, const PseudoTreeStructure& ps,
                                  VertexId root) {
  const Digraph& g = net.graph();
  std::set<VertexId> seen{root};
  std::vector<VertexId> stack{root};
  while (!stack.empty()) {
    const VertexId v = stack.back();
    stack.pop_back();
    for (EdgeId e : g.incident(v)) {
      if (ps.state(e) != EdgeState::kTree) continue;
      const VertexId w = g.opposite(e, v);
      if (seen.insert(w).second) stack.push_back(w);
    }
  }
  return seen;
}

void expect_sides_match_components(const MfpNetwork& net, const PseudoTreeStructure& ps) {
  const auto a = tree_component(net, ps, net.source());
  const auto b = tree_component(net, ps, net.sink());
  const auto va = ps.vertices_on(Side::kA);
  const auto vb = ps.vertices_on(Side::kB);
  ASSERT_EQ(a, std::set<VertexId>(va.begin(), va.end()));
  ASSERT_EQ(b, std::set<VertexId>(vb.begin(), vb.end()));
  ASSERT_EQ(a.size() + b.size(), static_cast<std::size_t>(net.graph().vertex_count()));
  ASSERT_EQ(ps.edges_in(EdgeState::kTree).size(), a.size() + b.size() - 2);
}

// s=0, u=1 on A, v=2 on B, t=3: e0 s->u, e1 v->t, e2 v->u held at capacity.
MfpNetwork upper_b_to_a_net() { return make_mfp(4, {{0, 1, 2}, {2, 3, 2}, {2, 1, 1}}, 0, 3); }

// s=0, x=1, y=2, t=3: e0 s->x, e1 x->t, e2 x->y, e3 s->y. B claims x and y.
MfpNetwork backward_b_edge_net() {
  return make_mfp(4, {{0, 1, 3}, {1, 3, 3}, {1, 2, 3}, {0, 2, 3}}, 0, 3);
}

TEST(InitialPseudoStructureTest, SingleEdge) {
  const MfpNetwork net = single_edge();
  const auto ps = initial_pseudo_structure(net);
  EXPECT_EQ(ps.vertices_on(Side::kA), std::vector<VertexId>{0});
  EXPECT_EQ(ps.vertices_on(Side::kB), std::vector<VertexId>{1});
  EXPECT_TRUE(ps.edges_in(EdgeState::kTree).empty());
  EXPECT_EQ(ps.edges_in(EdgeState::kLower), std::vector<EdgeId>{0});
  EXPECT_TRUE(ps.edges_in(EdgeState::kUpper).empty());
}

TEST(InitialPseudoStructureTest, SinkClaimsMiddleOfPath) {
  const MfpNetwork net = make_mfp(3, {{0, 1, 4}, {1, 2, 4}}, 0, 2);
  const auto ps = initial_pseudo_structure(net);
  EXPECT_EQ(ps.side(1), Side::kB);
  EXPECT_EQ(ps.edges_in(EdgeState::kTree), std::vector<EdgeId>{1});
  EXPECT_EQ(pseudo_tree_solution(net, ps), Flow(2));
}

TEST(InitialPseudoStructureTest, RandomNetworksGiveValidZeroFlowStructures) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    oracles::InstanceParams p;
    p.seed = seed;
    const MfpNetwork net = normalize_mfp(oracles::random_network(p)).network;
    const auto ps = initial_pseudo_structure(net);
    expect_sides_match_components(net, ps);
    ASSERT_TRUE(ps.edges_in(EdgeState::kUpper).empty());
    ASSERT_EQ(pseudo_tree_solution(net, ps), Flow(static_cast<std::size_t>(net.graph().edge_count())));
  }
}

TEST(InitialPseudoStructureTest, RejectsUnnormalizedInput) {
  const MfpNetwork net = make_mfp(3, {{0, 2, 1}, {2, 1, 1}}, 0, 2);
  EXPECT_THROW(initial_pseudo_structure(net), FlowError);
}

TEST(PseudoTreeStructureTest, RejectsEdgeJoiningTheTwoTrees) {
  const MfpNetwork net = single_edge();
  EXPECT_THROW(PseudoTreeStructure::from_states(net, states_from(1, {0})), FlowError);
}

TEST(ClassifyTest, SingleEdgeBeforeAndAfterSaturation) {
  const MfpNetwork net = single_edge(5);
  auto ps = initial_pseudo_structure(net);
  auto cls = classify_nontree_edges(net, ps);
  EXPECT_EQ(cls.lower_a_to_b, std::vector<EdgeId>{0});
  EXPECT_TRUE(cls.upper_a_to_b.empty());

  Flow f(1);
  const Augmentation aug = augment_and_leave(net, f, find_st_path(net, ps, 0));
  ps = pivot_mfp(net, ps, 0, aug);
  cls = classify_nontree_edges(net, ps);
  EXPECT_TRUE(cls.lower_a_to_b.empty());
  EXPECT_EQ(cls.upper_a_to_b, std::vector<EdgeId>{0});
  EXPECT_TRUE(cls.within_a.empty() && cls.within_b.empty());
  EXPECT_TRUE(cls.lower_b_to_a.empty() && cls.upper_b_to_a.empty());
}

TEST(ClassifyTest, LowerEdgeInsideSourceTree) {
  // Parallel s->u edges; u is not adjacent to t so A claims it.
  const MfpNetwork net = make_mfp(3, {{0, 1, 1}, {0, 2, 1}, {0, 1, 1}}, 0, 2);
  const auto ps = initial_pseudo_structure(net);
  const auto cls = classify_nontree_edges(net, ps);
  EXPECT_EQ(cls.within_a, std::vector<EdgeId>{2});
  EXPECT_EQ(cls.lower_a_to_b, std::vector<EdgeId>{1});
}

TEST(ClassifyTest, SixSetsPartitionNonTreeEdges) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    oracles::InstanceParams p;
    p.seed = seed;
    p.max_vertices = 15;
    const MfpNetwork net = oracles::random_network(p);
    MaxFlowOptions options;
    options.observer = [&](const MfpPivotView& view) {
      const Digraph& g = view.network.graph();
      const auto cls = classify_nontree_edges(view.network, view.structure);
      std::vector<EdgeId> all;
      auto take = [&](const std::vector<EdgeId>& set, EdgeState st, Side from, Side to) {
        for (EdgeId e : set) {
          ASSERT_EQ(view.structure.state(e), st);
          ASSERT_EQ(view.structure.side(g.tail(e)), from);
          ASSERT_EQ(view.structure.side(g.head(e)), to);
          all.push_back(e);
        }
      };
      take(cls.lower_a_to_b, EdgeState::kLower, Side::kA, Side::kB);
      take(cls.upper_b_to_a, EdgeState::kUpper, Side::kB, Side::kA);
      take(cls.lower_b_to_a, EdgeState::kLower, Side::kB, Side::kA);
      take(cls.upper_a_to_b, EdgeState::kUpper, Side::kA, Side::kB);
      for (EdgeId e : cls.within_a) {
        ASSERT_NE(view.structure.state(e), EdgeState::kTree);
        ASSERT_EQ(view.structure.side(g.tail(e)), Side::kA);
        ASSERT_EQ(view.structure.side(g.head(e)), Side::kA);
        all.push_back(e);
      }
      for (EdgeId e : cls.within_b) {
        ASSERT_NE(view.structure.state(e), EdgeState::kTree);
        ASSERT_EQ(view.structure.side(g.tail(e)), Side::kB);
        ASSERT_EQ(view.structure.side(g.head(e)), Side::kB);
        all.push_back(e);
      }
      std::sort(all.begin(), all.end());
      std::vector<EdgeId> expected = view.structure.edges_in(EdgeState::kLower);
      const auto upper = view.structure.edges_in(EdgeState::kUpper);
      expected.insert(expected.end(), upper.begin(), upper.end());
      std::sort(expected.begin(), expected.end());
      ASSERT_EQ(all, expected);
    };
    solve_mfp(net, options);
  }
}

TEST(CheckOptimalityMfpTest, Examples) {
  const MfpNetwork net = single_edge();
  EXPECT_EQ(check_optimality_mfp(classify_nontree_edges(net, initial_pseudo_structure(net))),
            std::vector<EdgeId>{0});

  const MaxFlowResult solved = solve_mfp(diamond());
  EXPECT_TRUE(check_optimality_mfp(
                  classify_nontree_edges(solved.normalization.network, solved.structure))
                  .empty());

  const MfpNetwork ub = upper_b_to_a_net();
  const auto ps = PseudoTreeStructure::from_states(ub, states_from(3, {0, 1}, {2}));
  EXPECT_EQ(check_optimality_mfp(classify_nontree_edges(ub, ps)), std::vector<EdgeId>{2});
}

TEST(FindStPathTest, SingleEdge) {
  const MfpNetwork net = single_edge();
  const auto path = find_st_path(net, initial_pseudo_structure(net), 0);
  EXPECT_EQ(path.members, (std::vector<OrientedEdge>{{0, true}}));
}

TEST(FindStPathTest, UpperBToAEdgeIsTraversedBackward) {
  const MfpNetwork net = upper_b_to_a_net();
  const auto ps = PseudoTreeStructure::from_states(net, states_from(3, {0, 1}, {2}));
  const auto path = find_st_path(net, ps, 2);
  EXPECT_EQ(path.members, (std::vector<OrientedEdge>{{0, true}, {2, false}, {1, true}}));
}

// Oracle: every member but the entering edge is a tree edge, the walk runs
// from s to t without revisiting a vertex, and the entering edge sits between
// the A part and the B part. Tree paths are unique, so this pins the path.
void check_path(const MfpNetwork& net, const PseudoTreeStructure& ps, EdgeId entering,
                const OrientedPath& path) {
  const Digraph& g = net.graph();
  ASSERT_EQ(path.entering, entering);
  VertexId at = net.source();
  std::set<VertexId> visited{at};
  bool crossed = false;
  for (const OrientedEdge& m : path.members) {
    const VertexId from = m.forward ? g.tail(m.edge) : g.head(m.edge);
    const VertexId to = m.forward ? g.head(m.edge) : g.tail(m.edge);
    ASSERT_EQ(from, at);
    ASSERT_TRUE(visited.insert(to).second);
    if (m.edge == entering) {
      ASSERT_FALSE(crossed);
      crossed = true;
      ASSERT_EQ(m.forward, ps.state(entering) == EdgeState::kLower);
      ASSERT_EQ(ps.side(from), Side::kA);
      ASSERT_EQ(ps.side(to), Side::kB);
    } else {
      ASSERT_EQ(ps.state(m.edge), EdgeState::kTree);
      ASSERT_EQ(ps.side(from), crossed ? Side::kB : Side::kA);
    }
    at = to;
  }
  ASSERT_TRUE(crossed);
  ASSERT_EQ(at, net.sink());
}

TEST(FindStPathTest, MatchesTreePathOracleOnEveryCandidate) {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    oracles::InstanceParams p;
    p.seed = seed;
    p.max_vertices = 20;
    p.max_edges = 60;
    MaxFlowOptions options;
    options.observer = [](const MfpPivotView& view) {
      const auto cls = classify_nontree_edges(view.network, view.structure);
      for (EdgeId e : check_optimality_mfp(cls)) {
        check_path(view.network, view.structure, e, find_st_path(view.network, view.structure, e));
      }
    };
    solve_mfp(oracles::random_network(p), options);
  }
}

TEST(AugmentTest, SingleEdgeSaturates) {
  const MfpNetwork net = single_edge(5);
  Flow f(1);
  const Augmentation aug = augment_and_leave(net, f, find_st_path(net, initial_pseudo_structure(net), 0));
  EXPECT_EQ(aug.delta, 5);
  EXPECT_EQ(aug.leaving, 0);
  EXPECT_EQ(aug.leaving_to, EdgeState::kUpper);
  EXPECT_EQ(f[0], 5);
}

TEST(AugmentTest, MiddleEdgeOfPathBlocks) {
  const MfpNetwork net = make_mfp(4, {{0, 1, 2}, {1, 2, 1}, {2, 3, 2}}, 0, 3);
  Flow f(3);
  const Augmentation aug = augment_and_leave(net, f, find_st_path(net, initial_pseudo_structure(net), 0));
  EXPECT_EQ(aug.delta, 1);
  EXPECT_EQ(aug.leaving, 1);
  EXPECT_EQ(f, Flow(std::vector<Quantity>{1, 1, 1}));
}

TEST(AugmentTest, EmptyBackwardEdgeGivesDegeneratePivot) {
  const MfpNetwork net = backward_b_edge_net();
  const auto ps = initial_pseudo_structure(net);
  ASSERT_EQ(ps.vertices_on(Side::kB), (std::vector<VertexId>{1, 2, 3}));
  const auto path = find_st_path(net, ps, 3);
  EXPECT_EQ(path.members, (std::vector<OrientedEdge>{{3, true}, {2, false}, {1, true}}));
  Flow f(4);
  const Augmentation aug = augment_and_leave(net, f, path);
  EXPECT_EQ(aug.delta, 0);
  EXPECT_EQ(aug.leaving, 2);
  EXPECT_EQ(aug.leaving_to, EdgeState::kLower);
  EXPECT_EQ(f, Flow(4));

  // y leaves B for A.
  const auto next = pivot_mfp(net, ps, 3, aug);
  EXPECT_EQ(next.side(2), Side::kA);
  EXPECT_EQ(next.side(1), Side::kB);
  expect_sides_match_components(net, next);
}

TEST(AugmentTest, TieBreakFollowsLeavingRule) {
  const MfpNetwork net = make_mfp(3, {{0, 1, 2}, {1, 2, 2}}, 0, 2);
  const auto ps = initial_pseudo_structure(net);
  Flow f1(2), f2(2);
  EXPECT_EQ(augment_and_leave(net, f1, find_st_path(net, ps, 0), LeavingRule::kFirstBlocking).leaving, 0);
  EXPECT_EQ(augment_and_leave(net, f2, find_st_path(net, ps, 0), LeavingRule::kLastBlocking).leaving, 1);
}

TEST(PivotMfpTest, EnteringEqualsLeavingMovesEdgeToUpper) {
  const MfpNetwork net = single_edge(5);
  const auto ps = initial_pseudo_structure(net);
  const auto next = pivot_mfp(net, ps, 0, Augmentation{5, 0, EdgeState::kUpper});
  EXPECT_TRUE(next.edges_in(EdgeState::kTree).empty());
  EXPECT_EQ(next.state(0), EdgeState::kUpper);
  EXPECT_EQ(next.sides().size(), 2u);
  EXPECT_EQ(next.side(0), Side::kA);
}

TEST(PivotMfpTest, SidesMatchComponentOracleAndBothMigrationsOccur) {
  int a_to_b = 0;
  int b_to_a = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    oracles::InstanceParams p;
    p.seed = seed;
    p.max_vertices = 20;
    p.max_edges = 60;
    std::vector<Side> previous;
    MaxFlowOptions options;
    options.observer = [&](const MfpPivotView& view) {
      expect_sides_match_components(view.network, view.structure);
      const auto sides = view.structure.sides();
      if (!previous.empty()) {
        for (std::size_t v = 0; v < sides.size(); ++v) {
          if (previous[v] == Side::kA && sides[v] == Side::kB) ++a_to_b;
          if (previous[v] == Side::kB && sides[v] == Side::kA) ++b_to_a;
        }
      }
      previous.assign(sides.begin(), sides.end());
    };
    solve_mfp(oracles::random_network(p), options);
  }
  EXPECT_GT(a_to_b, 0);
  EXPECT_GT(b_to_a, 0);
}

TEST(PseudoTreeSolutionTest, UpperEdgeForcesFlowThroughTrees) {
  // e2 v->u at capacity 1 needs a way out of u; with e0 s->u the only A edge
  // conservation at u fails, so the structure has no feasible tree solution.
  const MfpNetwork net = upper_b_to_a_net();
  const auto ps = PseudoTreeStructure::from_states(net, states_from(3, {0, 1}, {2}));
  EXPECT_THROW(pseudo_tree_solution(net, ps), InfeasibleStructure);
}

TEST(PseudoTreeSolutionTest, DiamondTerminalStructure) {
  const MaxFlowResult r = solve_mfp(diamond());
  EXPECT_EQ(pseudo_tree_solution(r.normalization.network, r.structure), r.flow);
}

TEST(SolveMfpTest, SingleEdgeInOnePivot) {
  const MaxFlowResult r = solve_mfp(single_edge(5));
  EXPECT_EQ(r.status, MaxFlowStatus::kOptimal);
  EXPECT_EQ(r.tau, 5);
  EXPECT_EQ(r.trace.pivots.size(), 1u);
  EXPECT_EQ(r.trace.pivots[0].tau, 5);
}

TEST(SolveMfpTest, Diamond) {
  const MaxFlowResult r = solve_mfp(diamond());
  EXPECT_EQ(r.tau, 3);
  EXPECT_EQ(r.tau, oracles::edmonds_karp(diamond()).tau);
  EXPECT_TRUE(validate_mfp_flow(diamond(), r.flow).ok());
  ASSERT_EQ(r.trace.pivots.size(), 3u);
  EXPECT_EQ(r.degenerate_pivots, 1);
  EXPECT_EQ(r.trace.pivots[1].leaving, 1);  // s->b saturates as its own blocking edge
}

TEST(SolveMfpTest, ZeroCapacitiesGiveOnlyDegeneratePivots) {
  const MfpNetwork net =
      make_mfp(5, {{0, 1, 0}, {0, 2, 0}, {1, 2, 0}, {2, 3, 0}, {1, 4, 0}, {3, 4, 0}, {2, 4, 0}}, 0, 4);
  const MaxFlowResult r = solve_mfp(net);
  EXPECT_EQ(r.status, MaxFlowStatus::kOptimal);
  EXPECT_EQ(r.tau, 0);
  ASSERT_FALSE(r.trace.pivots.empty());
  for (const auto& rec : r.trace.pivots) EXPECT_TRUE(rec.degenerate);
  EXPECT_EQ(r.degenerate_pivots, static_cast<std::int64_t>(r.trace.pivots.size()));
}

TEST(SolveMfpTest, AgreesWithOraclesUnderBothLeavingRules) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    oracles::InstanceParams p;
    p.seed = seed;
    const MfpNetwork net = oracles::random_network(p);
    const Quantity expected = oracles::edmonds_karp(net).tau;
    ASSERT_EQ(solve_mfp_via_mcfp(net).tau, expected);
    for (const LeavingRule rule : {LeavingRule::kFirstBlocking, LeavingRule::kLastBlocking}) {
      MaxFlowOptions options;
      options.leaving = rule;
      options.check_invariants = true;
      const MaxFlowResult r = solve_mfp(net, options);
      ASSERT_EQ(r.status, MaxFlowStatus::kOptimal);
      ASSERT_EQ(r.tau, expected) << "seed " << seed;
      ASSERT_TRUE(validate_mfp_flow(net, r.flow).ok());
      ASSERT_EQ(r.min_cut.capacity, r.tau);
      ASSERT_TRUE(detect_cycling(r.trace).empty());
    }
  }
}

TEST(SolveMfpTest, TauRisesByDeltaEachPivot) {
  oracles::InstanceParams p;
  p.seed = 77;
  const MaxFlowResult r = solve_mfp(oracles::random_network(p));
  Quantity tau = r.trace.initial_tau;
  for (const auto& rec : r.trace.pivots) {
    EXPECT_EQ(rec.tau, tau + rec.delta);
    EXPECT_EQ(rec.degenerate, rec.delta == 0);
    tau = rec.tau;
  }
  EXPECT_EQ(tau, r.tau);
}

TEST(SolveMfpTest, PivotCapTripsGuard) {
  MaxFlowOptions options;
  options.pivot_cap = 1;
  const MaxFlowResult r = solve_mfp(diamond(), options);
  EXPECT_EQ(r.status, MaxFlowStatus::kGuardTripped);
  EXPECT_EQ(r.trace.pivots.size(), 1u);
}

TEST(MinCutTest, SingleEdge) {
  const MaxFlowResult r = solve_mfp(single_edge(5));
  EXPECT_EQ(r.min_cut.source_side, std::vector<VertexId>{0});
  EXPECT_EQ(r.min_cut.sink_side, std::vector<VertexId>{1});
  EXPECT_EQ(r.min_cut.capacity, 5);
}

TEST(MinCutTest, Diamond) {
  const MaxFlowResult r = solve_mfp(diamond());
  EXPECT_EQ(r.min_cut.capacity, 3);
  EXPECT_EQ(r.min_cut.capacity, oracles::enumerate_min_cut(diamond()));
  EXPECT_EQ(r.min_cut.source_side, (std::vector<VertexId>{0, 1, 2}));
  EXPECT_EQ(r.min_cut.cut_edges, (std::vector<EdgeId>{2, 3}));
}

TEST(MinCutTest, MatchesEnumerationOnSmallNetworks) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    oracles::InstanceParams p;
    p.seed = seed;
    p.max_vertices = 12;
    p.max_edges = 30;
    const MfpNetwork net = oracles::random_network(p);
    const MaxFlowResult r = solve_mfp(net);
    ASSERT_EQ(r.min_cut.capacity, oracles::enumerate_min_cut(net)) << "seed " << seed;
    for (EdgeId e : r.min_cut.cut_edges) ASSERT_EQ(r.flow[e], net.capacity(e));
  }
}

TEST(MinCutTest, RejectsNonOptimalStructure) {
  const MfpNetwork net = diamond();
  try {
    extract_min_cut(net, initial_pseudo_structure(net), Flow(5));
    FAIL();
  } catch (const FlowError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotOptimal);
  }
}

TEST(ReducedBridgeTest, PotentialShapeAndReducedCostsPerClass) {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    oracles::InstanceParams p;
    p.seed = seed;
    p.max_vertices = 20;
    p.max_edges = 60;
    MaxFlowOptions options;
    options.observer = [](const MfpPivotView& view) {
      const MfpNetwork& net = view.network;
      const ReducedNetwork red = mfp_to_mcfp(net);
      const TreeStructure ts = to_reduced_structure(red, view.structure);
      const Potential pot = compute_potential(red.mcfp, ts, net.sink());
      for (VertexId v = 0; v < net.graph().vertex_count(); ++v) {
        const Quantity want = (v == net.sink() || view.structure.side(v) == Side::kA) ? 0 : 1;
        ASSERT_EQ(pot[v], want);
      }
      const auto cls = classify_nontree_edges(net, view.structure);
      auto all = [&](const std::vector<EdgeId>& set, Quantity rc) {
        for (EdgeId e : set) ASSERT_EQ(reduced_cost(red.mcfp, pot, e), rc);
      };
      all(cls.lower_a_to_b, -1);
      all(cls.upper_b_to_a, 1);
      all(cls.within_a, 0);
      all(cls.within_b, 0);
      all(cls.lower_b_to_a, 1);
      all(cls.upper_a_to_b, -1);
      ASSERT_EQ(check_optimality(red.mcfp, ts, pot), check_optimality_mfp(cls));
    };
    solve_mfp(oracles::random_network(p), options);
  }
}

}  // namespace
}  // namespace nsflow
