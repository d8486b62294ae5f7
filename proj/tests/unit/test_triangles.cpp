#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "expdecomp/congest.hpp"
#include "expdecomp/generators.hpp"
#include "expdecomp/triangles.hpp"
#include "support/oracles.hpp"

using namespace expdecomp;

namespace {

TriangleResult run(const Graph& g, std::uint64_t seed) {
  Network net(g, NetworkConfig{64, ExecutionMode::kAccounted, 1});
  return triangle_enumeration(net, 1.0 / 6, 2, seed);
}

}  // namespace

TEST(BruteForce, SmallCounts) {
  EXPECT_EQ(brute_force_triangles(make_clique(4)).size(), 4u);
  EXPECT_EQ(brute_force_triangles(make_cycle(6)).size(), 0u);
  EXPECT_EQ(brute_force_triangles(make_clique(3)).front(), (Triangle{0, 1, 2}));
  EXPECT_THROW(brute_force_triangles(Graph(2001)), TooLarge);
}

TEST(BruteForce, MatchesMatrixTrace) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Graph g = make_erdos_renyi(30, 0.3, seed);
    EXPECT_EQ(brute_force_triangles(g).size(), oracle::triangle_count_matrix(g));
  }
}

TEST(Enumeration, SmallGraphsExact) {
  EXPECT_EQ(run(make_clique(4), 1).triangles.size(), 4u);
  EXPECT_EQ(run(make_cycle(6), 1).triangles.size(), 0u);
}

TEST(Enumeration, PlantedCliqueOnEmptyBackground) {
  const Graph g = make_planted_clique(30, 0.0, 10, 4);
  const auto r = run(g, 2);
  EXPECT_EQ(r.triangles.size(), 120u);
  EXPECT_EQ(r.triangles, brute_force_triangles(g));
}

TEST(Enumeration, EqualsBruteForceOnMixedGraphs) {
  const std::vector<Graph> graphs{make_erdos_renyi(40, 0.2, 1), make_erdos_renyi(30, 0.5, 2),
                                  make_cliques_chain(3, 7, 1), make_planted_clique(40, 0.1, 8, 3), make_grid(5, 5)};
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    const Graph& g = graphs[i];
    const auto r = run(g, i);
    EXPECT_EQ(r.triangles, brute_force_triangles(g)) << "graph " << i;
    EXPECT_TRUE(verify_triangles(g, r.triangles));
    ASSERT_EQ(r.reporters.size(), r.triangles.size());
    // the reporter may sit outside its triangle, but it is a vertex of g
    for (Vertex rep : r.reporters) EXPECT_LT(rep, g.num_vertices());
    EXPECT_EQ(r.level_edges.size(), r.levels);
    if (!r.level_edges.empty()) EXPECT_EQ(r.level_edges.front(), g.num_edges());
    for (std::size_t l = 1; l < r.level_edges.size(); ++l) EXPECT_LT(r.level_edges[l], r.level_edges[l - 1]);
  }
}

TEST(Enumeration, ComponentCoversTrianglesWithAnInsideEdge) {
  const Graph g = make_erdos_renyi(24, 0.4, 5);
  std::vector<Vertex> comp(12);
  std::iota(comp.begin(), comp.end(), 0);
  std::vector<std::uint32_t> label(24, 1);
  for (Vertex v : comp) label[v] = 0;
  const auto e = enumerate_component(g, comp, label);
  std::set<Triangle> expect;
  for (const auto& t : brute_force_triangles(g)) {
    const bool inside = (label[t[0]] == 0 && label[t[1]] == 0) || (label[t[0]] == 0 && label[t[2]] == 0) ||
                        (label[t[1]] == 0 && label[t[2]] == 0);
    if (inside) expect.insert(t);
  }
  EXPECT_EQ(std::set<Triangle>(e.triangles.begin(), e.triangles.end()), expect);
}

TEST(Verify, TrianglesRejectsBadLists) {
  const Graph k4 = make_clique(4);
  EXPECT_TRUE(verify_triangles(k4, brute_force_triangles(k4)));
  EXPECT_FALSE(verify_triangles(make_cycle(4), {Triangle{0, 1, 2}}));
  EXPECT_FALSE(verify_triangles(k4, {Triangle{0, 1, 2}, Triangle{0, 1, 2}}));
  EXPECT_FALSE(verify_triangles(k4, {Triangle{1, 0, 2}}));
}
