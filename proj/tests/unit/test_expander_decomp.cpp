#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "expdecomp/congest.hpp"
#include "expdecomp/expander_decomp.hpp"
#include "expdecomp/generators.hpp"
#include "support/oracles.hpp"

using namespace expdecomp;

namespace {

Network net_for(const Graph& g, ExecutionMode mode = ExecutionMode::kAccounted, unsigned threads = 1) {
  // chunk 1 so small graphs still run on several threads
  return Network(g, NetworkConfig{64, mode, threads, 1});
}

/// Connected parts of the edges that were not removed, by union-find over the edge list.
std::vector<std::vector<Vertex>> remaining_parts(const Graph& g, const std::vector<RemovedEdge>& removed) {
  std::set<Edge> gone;
  for (const auto& r : removed) gone.insert(r.edge);
  std::vector<Vertex> up(g.num_vertices());
  for (Vertex v = 0; v < up.size(); ++v) up[v] = v;
  auto find = [&](Vertex x) {
    while (up[x] != x) x = up[x] = up[up[x]];
    return x;
  };
  for (const Edge& e : g.edges())
    if (!gone.count(e)) up[find(e.u)] = find(e.v);
  std::vector<std::vector<Vertex>> by_root(g.num_vertices());
  for (Vertex v = 0; v < up.size(); ++v) by_root[find(v)].push_back(v);
  std::vector<std::vector<Vertex>> out;
  for (auto& p : by_root)
    if (!p.empty()) out.push_back(p);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(Params, DepthAndBetaExample) {
  const DecompParams p = derive_decomp_params(10, 20, 0.6, 2);
  std::uint64_t d = 0;
  for (double x = 90.0; x >= 1.0; x *= 0.95) ++d;
  EXPECT_EQ(d, 88u);
  EXPECT_EQ(p.d, 88u);
  EXPECT_NEAR(p.beta, 0.2 / 88, 1e-15);
  EXPECT_NEAR(p.beta, 2.27e-3, 0.01e-3);
}

TEST(Params, LadderStrictlyDecreasing) {
  for (std::size_t n : {10u, 100u, 5000u})
    for (double eps : {0.1, 0.5, 0.9})
      for (std::uint32_t k : {1u, 2u, 4u}) {
        const DecompParams p = derive_decomp_params(n, 3 * n, eps, k);
        ASSERT_EQ(p.log2_phi.size(), k + 1);
        for (std::size_t i = 1; i < p.log2_phi.size(); ++i) EXPECT_LT(p.log2_phi[i], p.log2_phi[i - 1]);
      }
  EXPECT_THROW(derive_decomp_params(10, 20, 0.0, 2), BadEpsilon);
  EXPECT_THROW(derive_decomp_params(10, 20, 1.0, 2), BadEpsilon);
  EXPECT_THROW(derive_decomp_params(10, 20, 0.5, 0), BadEpsilon);
}

TEST(Decompose, ThreeCliquesChain) {
  const Graph g = make_cliques_chain(3, 8, 1);
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    Network net = net_for(g);
    const Decomposition d = expander_decomposition(net, 0.5, 2, seed);
    EXPECT_TRUE(d.budget_ok);
    EXPECT_LE(d.removed.size(), 0.5 * g.num_edges());
    EXPECT_TRUE(d.verification.pass);
    // each clique lies in one component (singleton spill allowed)
    for (Vertex c = 0; c < 3; ++c) {
      std::size_t biggest = 0;
      for (const auto& comp : d.components) {
        std::size_t in = 0;
        for (Vertex v : comp) in += v / 8 == c;
        biggest = std::max(biggest, in);
        if (in > 0 && comp.size() > 1) EXPECT_EQ(in, comp.size());
      }
      EXPECT_GE(biggest, 1u);
    }
  }
}

TEST(Decompose, DisjointCliquesFinalizeWithoutRemovals) {
  std::vector<Edge> edges;
  for (Vertex base : {0u, 8u})
    for (Vertex i = 0; i < 8; ++i)
      for (Vertex j = i + 1; j < 8; ++j) edges.push_back({base + i, base + j});
  const Graph g(16, edges);
  Network net = net_for(g);
  const Decomposition d = expander_decomposition(net, 0.5, 2, 1);
  EXPECT_TRUE(d.removed.empty());
  ASSERT_EQ(d.components.size(), 2u);
  EXPECT_EQ(d.components[0].size(), 8u);
}

TEST(Decompose, ComponentsAreRemainingParts) {
  const std::vector<Graph> graphs{make_grid(5, 5), make_barbell(8, 2), make_random_regular(24, 4, 3)};
  for (const Graph& g : graphs) {
    Network net = net_for(g);
    const Decomposition d = expander_decomposition(net, 0.5, 2, 7);
    auto comps = d.components;
    std::sort(comps.begin(), comps.end());
    EXPECT_EQ(comps, remaining_parts(g, d.removed));
    std::set<Edge> uniq;
    for (const auto& r : d.removed) {
      EXPECT_TRUE(g.has_edge(r.edge.u, r.edge.v));
      EXPECT_TRUE(uniq.insert(r.edge).second);
    }
    EXPECT_EQ(d.removed_by_channel[0] + d.removed_by_channel[1] + d.removed_by_channel[2], d.removed.size());
  }
}

TEST(Decompose, SmallComponentsPassOracleAndStructure) {
  const std::vector<Graph> graphs{make_grid(4, 6), make_cliques_chain(4, 5, 1), make_lollipop(6, 8)};
  for (const Graph& g : graphs) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      Network net = net_for(g);
      const Decomposition d = expander_decomposition(net, 0.5, 2, seed);
      EXPECT_LE(d.stats.depth_max, d.params.d);
      EXPECT_LE(d.stats.level_max, d.params.k);
      EXPECT_TRUE(d.stats.overlap_ok);
      EXPECT_TRUE(d.stats.partition_bounds_ok);
      EXPECT_TRUE(d.stats.level_volume_ok);
      for (const auto& comp : d.components) {
        if (comp.size() < 2 || comp.size() > 14) continue;
        const Graph sub = contract(g, comp).graph;
        const auto [num, den] = oracle::min_conductance(sub);
        if (den == 0) continue;
        EXPECT_GE(static_cast<double>(num) / static_cast<double>(den), d.params.phi_k());
      }
    }
  }
}

TEST(Decompose, JsonDeterministicAcrossRunsAndThreads) {
  const Graph g = make_barbell(6, 1);
  const DecompConfig cfg;
  std::string first;
  for (unsigned threads : {1u, 4u}) {
    for (int rep = 0; rep < 2; ++rep) {
      Network net = net_for(g, ExecutionMode::kSimulated, threads);
      const std::string js = decomposition_json(expander_decomposition(net, 0.5, 2, 11, cfg), cfg);
      if (first.empty()) first = js;
      EXPECT_EQ(js, first);
    }
  }
}

TEST(Decompose, ModesProduceSameOutputAndLedger) {
  const Graph g = make_cliques_chain(3, 6, 1);
  Network a = net_for(g, ExecutionMode::kSimulated);
  Network b = net_for(g, ExecutionMode::kAccounted);
  const Decomposition x = expander_decomposition(a, 0.5, 2, 5);
  const Decomposition y = expander_decomposition(b, 0.5, 2, 5);
  EXPECT_EQ(x.components, y.components);
  EXPECT_EQ(x.ledger, y.ledger);
}
