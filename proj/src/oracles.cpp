#include "nsflow/oracles.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>

#include "nsflow/error.hpp"

namespace nsflow::oracles {

namespace {

// Paired residual arcs: arc 2e is the forward copy of edge e, 2e+1 its reverse.
struct Residual {
  std::vector<VertexId> to;
  std::vector<Quantity> cap;
  std::vector<std::vector<int>> out;
};

Residual make_residual(const MfpNetwork& net) {
  const Digraph& g = net.graph();
  Residual r;
  r.out.resize(static_cast<std::size_t>(g.vertex_count()));
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const int fwd = static_cast<int>(r.to.size());
    r.to.push_back(g.head(e));
    r.cap.push_back(net.capacity(e));
    r.to.push_back(g.tail(e));
    r.cap.push_back(0);
    r.out[static_cast<std::size_t>(g.tail(e))].push_back(fwd);
    r.out[static_cast<std::size_t>(g.head(e))].push_back(fwd + 1);
  }
  return r;
}

bool bernoulli(std::mt19937_64& rng, double p) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

template <typename T>
T uniform(std::mt19937_64& rng, T lo, T hi) {
  return std::uniform_int_distribution<T>(lo, hi)(rng);
}

}  // namespace

MaxFlowValue edmonds_karp(const MfpNetwork& net) {
  const Digraph& g = net.graph();
  Residual r = make_residual(net);
  const auto n = static_cast<std::size_t>(g.vertex_count());
  const VertexId s = net.source();
  const VertexId t = net.sink();

  Quantity tau = 0;
  std::vector<int> via(n);
  while (true) {
    std::fill(via.begin(), via.end(), -1);
    std::deque<VertexId> queue{s};
    via[static_cast<std::size_t>(s)] = -2;
    while (!queue.empty() && via[static_cast<std::size_t>(t)] == -1) {
      const VertexId v = queue.front();
      queue.pop_front();
      for (int a : r.out[static_cast<std::size_t>(v)]) {
        const VertexId w = r.to[static_cast<std::size_t>(a)];
        if (r.cap[static_cast<std::size_t>(a)] > 0 && via[static_cast<std::size_t>(w)] == -1) {
          via[static_cast<std::size_t>(w)] = a;
          queue.push_back(w);
        }
      }
    }
    if (via[static_cast<std::size_t>(t)] == -1) break;

    Quantity push = std::numeric_limits<Quantity>::max();
    for (VertexId v = t; v != s;) {
      const int a = via[static_cast<std::size_t>(v)];
      push = std::min(push, r.cap[static_cast<std::size_t>(a)]);
      v = r.to[static_cast<std::size_t>(a ^ 1)];
    }
    for (VertexId v = t; v != s;) {
      const int a = via[static_cast<std::size_t>(v)];
      r.cap[static_cast<std::size_t>(a)] -= push;
      r.cap[static_cast<std::size_t>(a ^ 1)] += push;
      v = r.to[static_cast<std::size_t>(a ^ 1)];
    }
    tau = checked_add(tau, push);
  }

  MaxFlowValue out{tau, Flow(static_cast<std::size_t>(g.edge_count()))};
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    out.flow[e] = r.cap[static_cast<std::size_t>(2 * e + 1)];
  }
  return out;
}

std::optional<McfpOptimum> brute_force_mcfp(const McfpNetwork& net) {
  const Digraph& g = net.graph();
  const EdgeId m = g.edge_count();
  if (m > kBruteForceMaxEdges) {
    throw FlowError(ErrorCode::kTooLarge, "brute force limited to 10 edges");
  }
  std::int64_t assignments = 1;
  for (EdgeId e = 0; e < m; ++e) {
    assignments *= net.upper(e) - net.lower(e) + 1;
    if (assignments > kBruteForceMaxAssignments) {
      throw FlowError(ErrorCode::kTooLarge, "brute force limited to 1e7 assignments");
    }
  }

  std::vector<Quantity> value(static_cast<std::size_t>(m));
  std::vector<Quantity> inflow(static_cast<std::size_t>(g.vertex_count()), 0);
  std::optional<McfpOptimum> best;
  Quantity cost = 0;

  auto assign = [&](auto&& self, EdgeId e) -> void {
    if (e == m) {
      for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (inflow[static_cast<std::size_t>(v)] != net.demand(v)) return;
      }
      if (!best || cost < best->cost) best = McfpOptimum{cost, Flow(value)};
      return;
    }
    const auto i = static_cast<std::size_t>(e);
    const auto head = static_cast<std::size_t>(g.head(e));
    const auto tail = static_cast<std::size_t>(g.tail(e));
    for (Quantity x = net.lower(e); x <= net.upper(e); ++x) {
      value[i] = x;
      inflow[head] += x;
      inflow[tail] -= x;
      cost += net.cost(e) * x;
      self(self, e + 1);
      inflow[head] -= x;
      inflow[tail] += x;
      cost -= net.cost(e) * x;
    }
  };
  assign(assign, 0);
  return best;
}

Quantity enumerate_min_cut(const MfpNetwork& net) {
  const Digraph& g = net.graph();
  const VertexId n = g.vertex_count();
  if (n > kMinCutMaxVertices) {
    throw FlowError(ErrorCode::kTooLarge, "cut enumeration limited to 12 vertices");
  }
  std::vector<VertexId> free_vertices;
  for (VertexId v = 0; v < n; ++v) {
    if (v != net.source() && v != net.sink()) free_vertices.push_back(v);
  }
  const std::uint32_t combos = 1u << free_vertices.size();
  Quantity best = std::numeric_limits<Quantity>::max();
  std::vector<char> source_side(static_cast<std::size_t>(n));
  for (std::uint32_t mask = 0; mask < combos; ++mask) {
    std::fill(source_side.begin(), source_side.end(), 0);
    source_side[static_cast<std::size_t>(net.source())] = 1;
    for (std::size_t i = 0; i < free_vertices.size(); ++i) {
      if (mask & (1u << i)) source_side[static_cast<std::size_t>(free_vertices[i])] = 1;
    }
    Quantity cut = 0;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      if (source_side[static_cast<std::size_t>(g.tail(e))] &&
          !source_side[static_cast<std::size_t>(g.head(e))]) {
        cut = checked_add(cut, net.capacity(e));
      }
    }
    best = std::min(best, cut);
  }
  return best;
}

MfpNetwork random_network(const InstanceParams& params) {
  std::mt19937_64 rng(params.seed);
  const VertexId n = uniform<VertexId>(rng, std::max<VertexId>(2, params.min_vertices),
                                       std::max<VertexId>(2, params.max_vertices));
  const VertexId s = 0;
  const VertexId t = n - 1;

  auto draw_capacity = [&] {
    if (bernoulli(rng, params.zero_capacity_probability)) return Quantity{0};
    return uniform<Quantity>(rng, 1, std::max<Quantity>(1, params.max_capacity));
  };

  std::vector<VertexId> middle(static_cast<std::size_t>(n - 2));
  std::iota(middle.begin(), middle.end(), 1);
  std::shuffle(middle.begin(), middle.end(), rng);
  const auto hops = uniform<std::size_t>(rng, 0, middle.size());

  std::vector<Arc> arcs;
  std::vector<Quantity> capacity;
  VertexId previous = s;
  for (std::size_t i = 0; i < hops; ++i) {
    arcs.push_back({previous, middle[i]});
    capacity.push_back(draw_capacity());
    previous = middle[i];
  }
  arcs.push_back({previous, t});
  capacity.push_back(draw_capacity());

  if (!params.backbone_only) {
    const EdgeId target = uniform<EdgeId>(rng, std::max<EdgeId>(params.min_edges, 1),
                                          std::max<EdgeId>(params.max_edges, 1));
    while (static_cast<EdgeId>(arcs.size()) < target) {
      const VertexId u = uniform<VertexId>(rng, 0, n - 1);
      const VertexId v = uniform<VertexId>(rng, 0, n - 1);
      if (u == v) continue;
      arcs.push_back({u, v});
      capacity.push_back(draw_capacity());
    }
  }
  return MfpNetwork(Digraph::build(n, std::move(arcs)), std::move(capacity), s, t);
}

McfpNetwork random_mcfp(const McfpInstanceParams& params) {
  std::mt19937_64 rng(params.seed);
  const VertexId n = std::max<VertexId>(2, params.vertices);
  const EdgeId m = uniform<EdgeId>(rng, 1, std::max<EdgeId>(1, params.max_edges));

  std::vector<Arc> arcs;
  std::vector<Quantity> lower, upper, cost;
  while (static_cast<EdgeId>(arcs.size()) < m) {
    const VertexId u = uniform<VertexId>(rng, 0, n - 1);
    const VertexId v = uniform<VertexId>(rng, 0, n - 1);
    if (u == v) continue;
    arcs.push_back({u, v});
    const Quantity a = uniform<Quantity>(rng, 0, params.max_capacity);
    const Quantity b = uniform<Quantity>(rng, 0, params.max_capacity);
    // Lower bounds stay mostly zero, as in typical instances.
    lower.push_back(bernoulli(rng, 0.3) ? std::min(a, b) : 0);
    upper.push_back(std::max(a, b));
    cost.push_back(uniform<Quantity>(rng, -params.max_abs_cost, params.max_abs_cost));
  }

  std::vector<Quantity> demand(static_cast<std::size_t>(n), 0);
  if (bernoulli(rng, params.feasible_probability)) {
    for (std::size_t e = 0; e < arcs.size(); ++e) {
      const Quantity x = uniform<Quantity>(rng, lower[e], upper[e]);
      demand[static_cast<std::size_t>(arcs[e].head)] += x;
      demand[static_cast<std::size_t>(arcs[e].tail)] -= x;
    }
  } else {
    Quantity total = 0;
    for (VertexId v = 0; v + 1 < n; ++v) {
      demand[static_cast<std::size_t>(v)] =
          uniform<Quantity>(rng, -params.max_capacity, params.max_capacity);
      total += demand[static_cast<std::size_t>(v)];
    }
    demand[static_cast<std::size_t>(n - 1)] = -total;
  }
  return McfpNetwork(Digraph::build(n, std::move(arcs)), std::move(lower), std::move(upper),
                     std::move(cost), std::move(demand));
}

Flow random_feasible_flow(const MfpNetwork& net, std::mt19937_64& rng, int walks) {
  const Digraph& g = net.graph();
  const auto n = static_cast<std::size_t>(g.vertex_count());
  Flow f(static_cast<std::size_t>(g.edge_count()));

  struct Step {
    EdgeId edge;
    bool forward;
  };
  std::vector<int> position(n, -1);
  std::vector<Step> steps;

  for (int w = 0; w < walks; ++w) {
    // Walks start at s, or at a random vertex to produce internal cycles.
    const VertexId start = bernoulli(rng, 0.7)
                               ? net.source()
                               : uniform<VertexId>(rng, 0, g.vertex_count() - 1);
    if (start == net.sink()) continue;
    std::fill(position.begin(), position.end(), -1);
    steps.clear();
    position[static_cast<std::size_t>(start)] = 0;

    VertexId v = start;
    std::size_t cycle_from = 0;
    bool closed = false;
    while (!closed) {
      std::vector<Step> options;
      for (EdgeId e : g.incident(v)) {
        if (g.tail(e) == v && f[e] < net.capacity(e)) options.push_back({e, true});
        if (g.head(e) == v && f[e] > 0) options.push_back({e, false});
      }
      if (options.empty()) break;
      const Step step = options[uniform<std::size_t>(rng, 0, options.size() - 1)];
      const VertexId next = g.opposite(step.edge, v);
      steps.push_back(step);
      if (next == net.sink() && start == net.source()) {
        closed = true;
      } else if (position[static_cast<std::size_t>(next)] >= 0) {
        // Keep only the closed loop; a loop through s or t is still a
        // circulation and preserves conservation everywhere.
        cycle_from = static_cast<std::size_t>(position[static_cast<std::size_t>(next)]);
        closed = true;
      } else if (next == net.sink()) {
        break;
      } else {
        position[static_cast<std::size_t>(next)] = static_cast<int>(steps.size());
        v = next;
      }
    }
    if (!closed) continue;

    Quantity room = std::numeric_limits<Quantity>::max();
    for (std::size_t i = cycle_from; i < steps.size(); ++i) {
      const Step& st = steps[i];
      room = std::min(room, st.forward ? net.capacity(st.edge) - f[st.edge] : f[st.edge]);
    }
    if (room <= 0) continue;
    const Quantity push = uniform<Quantity>(rng, 1, room);
    for (std::size_t i = cycle_from; i < steps.size(); ++i) {
      const Step& st = steps[i];
      f[st.edge] += st.forward ? push : -push;
    }
  }
  return f;
}

}  // namespace nsflow::oracles
