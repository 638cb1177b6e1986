#include "nsflow/network.hpp"

#include <gtest/gtest.h>

#include <random>

#include "nsflow/error.hpp"
#include "nsflow/oracles.hpp"
#include "test_networks.hpp"

namespace nsflow {
namespace {

using testing::diamond;
using testing::make_mcfp;
using testing::make_mfp;
using testing::single_edge;

TEST(McfpNetworkTest, RejectsInvalidBoundsAndUnbalancedDemands) {
  EXPECT_THROW(make_mcfp(2, {{0, 1, 2, 1, 0}}, {}), FlowError);
  EXPECT_THROW(make_mcfp(2, {{0, 1, 0, 1, 0}}, {1, 0}), FlowError);
  EXPECT_THROW(McfpNetwork(Digraph::build(2, {{0, 1}}), {0}, {1}, {}, {0, 0}), FlowError);
}

TEST(MfpNetworkTest, RejectsSourceEqualsSink) {
  try {
    make_mfp(2, {{0, 1, 1}}, 1, 1);
    FAIL();
  } catch (const FlowError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSourceEqualsSink);
  }
}

TEST(ValidateMcfpTest, ZeroFlowOnZeroDemandNetwork) {
  const McfpNetwork net = make_mcfp(3, {{0, 1, 0, 4, 1}, {1, 2, 0, 4, 1}}, {});
  EXPECT_TRUE(validate_mcfp_flow(net, Flow(2)).ok());
}

TEST(ValidateMcfpTest, LowerBoundViolation) {
  const McfpNetwork net = make_mcfp(2, {{0, 1, 1, 2, 0}}, {-1, 1});
  const ValidityReport r = validate_mcfp_flow(net, Flow(1));
  ASSERT_EQ(r.capacity.size(), 1u);
  EXPECT_EQ(r.capacity[0].edge, 0);
  // Zero flow also misses both demands.
  EXPECT_EQ(r.balance.size(), 2u);
}

TEST(ValidateMcfpTest, SizeMismatch) {
  const McfpNetwork net = make_mcfp(2, {{0, 1, 0, 2, 0}}, {});
  try {
    validate_mcfp_flow(net, Flow(2));
    FAIL();
  } catch (const FlowError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSizeMismatch);
  }
}

TEST(ValidateMfpTest, ZeroFlowIsValid) {
  EXPECT_TRUE(validate_mfp_flow(diamond(), Flow(5)).ok());
}

TEST(ValidateMfpTest, ConservationViolationAtInnerVertex) {
  const MfpNetwork net = make_mfp(3, {{0, 1, 3}, {1, 2, 3}}, 0, 2);
  const ValidityReport r = validate_mfp_flow(net, Flow(std::vector<Quantity>{1, 0}));
  EXPECT_TRUE(r.capacity.empty());
  ASSERT_EQ(r.balance.size(), 1u);
  EXPECT_EQ(r.balance[0].vertex, 1);
  EXPECT_EQ(r.balance[0].net_inflow, 1);
}

TEST(ValidateMfpTest, EachSingleViolationIsReported) {
  const MfpNetwork net = diamond();
  Flow f(std::vector<Quantity>{1, 2, 1, 2, 0});
  ASSERT_TRUE(validate_mfp_flow(net, f).ok());
  Flow over = f;
  over[3] = 3;
  const auto r = validate_mfp_flow(net, over);
  ASSERT_EQ(r.capacity.size(), 1u);
  EXPECT_EQ(r.capacity[0].edge, 3);
  Flow negative = f;
  negative[4] = -1;
  EXPECT_EQ(validate_mfp_flow(net, negative).capacity.size(), 1u);
}

TEST(FlowValueTest, Examples) {
  EXPECT_EQ(flow_value(single_edge(), Flow(1)), 0);
  EXPECT_EQ(flow_value(single_edge(), Flow(std::vector<Quantity>{5})), 5);
  EXPECT_EQ(flow_value(diamond(), Flow(std::vector<Quantity>{1, 2, 1, 2, 0})), 3);
}

TEST(FlowCostTest, Examples) {
  const McfpNetwork one = make_mcfp(2, {{0, 1, 0, 10, -1}}, {});
  EXPECT_EQ(flow_cost(one, Flow(1)), 0);
  EXPECT_EQ(flow_cost(one, Flow(std::vector<Quantity>{4})), -4);
}

TEST(FlowCostTest, OverflowIsAnError) {
  const McfpNetwork net = make_mcfp(2, {{0, 1, 0, INT64_MAX, INT64_MAX / 2}}, {});
  try {
    flow_cost(net, Flow(std::vector<Quantity>{4}));
    FAIL();
  } catch (const FlowError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kArithmeticOverflow);
  }
}

TEST(NormalizeTest, DropsEdgeLeavingSink) {
  const MfpNetwork net = make_mfp(2, {{0, 1, 3}, {1, 0, 4}}, 0, 1);
  const NormalizedMfp norm = normalize_mfp(net);
  EXPECT_EQ(norm.network.graph().edge_count(), 1);
  EXPECT_EQ(norm.edge_to_normalized[1], kNoEdge);
  EXPECT_EQ(norm.edge_to_original, (std::vector<EdgeId>{0}));
  EXPECT_TRUE(norm.network.is_normalized());
}

TEST(NormalizeTest, DropsIsolatedVertex) {
  const MfpNetwork net = make_mfp(4, {{0, 2, 3}, {2, 3, 4}}, 0, 3);
  const NormalizedMfp norm = normalize_mfp(net);
  EXPECT_EQ(norm.network.graph().vertex_count(), 3);
  EXPECT_EQ(norm.vertex_to_normalized[1], kNoVertex);
  EXPECT_EQ(norm.network.sink(), 2);
}

TEST(NormalizeTest, DropsComponentReachableOnlyThroughRemovedEdges) {
  // 2 -> 0 enters s and is removed, which strands vertex 2 and edge 3 -> 2.
  const MfpNetwork net = make_mfp(4, {{0, 1, 1}, {2, 0, 1}, {3, 2, 1}}, 0, 1);
  const NormalizedMfp norm = normalize_mfp(net);
  EXPECT_EQ(norm.network.graph().vertex_count(), 2);
  EXPECT_EQ(norm.network.graph().edge_count(), 1);
}

TEST(NormalizeTest, IdentityOnNormalizedInput) {
  const MfpNetwork net = diamond();
  ASSERT_TRUE(net.is_normalized());
  const NormalizedMfp norm = normalize_mfp(net);
  EXPECT_TRUE(norm.is_identity());
  EXPECT_EQ(norm.network, net);
}

TEST(NormalizeTest, IdempotentAndLiftsValidFlows) {
  std::mt19937_64 rng(7);
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    oracles::InstanceParams p;
    p.max_vertices = 12;
    p.max_edges = 30;
    p.seed = seed;
    const MfpNetwork net = oracles::random_network(p);
    const NormalizedMfp once = normalize_mfp(net);
    ASSERT_TRUE(once.network.is_normalized());
    const NormalizedMfp twice = normalize_mfp(once.network);
    ASSERT_TRUE(twice.is_identity());
    ASSERT_EQ(twice.network, once.network);

    const Flow f = oracles::random_feasible_flow(once.network, rng);
    ASSERT_TRUE(validate_mfp_flow(once.network, f).ok());
    const Flow lifted = once.lift(f);
    ASSERT_TRUE(validate_mfp_flow(net, lifted).ok()) << "seed " << seed;
    ASSERT_EQ(flow_value(net, lifted), flow_value(once.network, f));
  }
}

TEST(FlowValueTest, SourceOutflowEqualsSinkInflowForValidFlows) {
  std::mt19937_64 rng(11);
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    oracles::InstanceParams p;
    p.max_vertices = 15;
    p.max_edges = 40;
    p.seed = seed;
    const MfpNetwork net = normalize_mfp(oracles::random_network(p)).network;
    const Flow f = oracles::random_feasible_flow(net, rng);
    Quantity out_s = 0, in_t = 0;
    for (EdgeId e = 0; e < net.graph().edge_count(); ++e) {
      if (net.graph().tail(e) == net.source()) out_s += f[e];
      if (net.graph().head(e) == net.sink()) in_t += f[e];
    }
    ASSERT_EQ(out_s, in_t);
    ASSERT_EQ(flow_value(net, f), out_s);
  }
}

}  // namespace
}  // namespace nsflow
