#include <gtest/gtest.h>

#include <cmath>

#include "expdecomp/generators.hpp"
#include "support/oracles.hpp"

using namespace expdecomp;

TEST(Generators, FixedFamilies) {
  EXPECT_EQ(make_clique(4).num_edges(), 6u);
  EXPECT_EQ(make_cycle(5).num_edges(), 5u);
  EXPECT_EQ(make_path(5).num_edges(), 4u);
  EXPECT_EQ(make_star(5).degree(0), 4u);
  EXPECT_EQ(make_grid(3, 4).num_edges(), 17u);
  EXPECT_EQ(make_barbell(4, 1).num_edges(), 13u);
  EXPECT_EQ(make_cliques_chain(3, 8, 1).num_edges(), 3u * 28u + 2u);
  EXPECT_EQ(make_lollipop(5, 3).num_vertices(), 8u);
  EXPECT_THROW(make_cycle(2), Infeasible);
  EXPECT_THROW(make_barbell(3, 4), Infeasible);
}

TEST(Generators, ErdosRenyiEdgeCount) {
  const Graph g = make_erdos_renyi(100, 0.5, 7);
  const double mean = 4950 * 0.5;
  EXPECT_NEAR(static_cast<double>(g.num_edges()), mean, 5 * std::sqrt(4950 * 0.25));
  EXPECT_THROW(make_erdos_renyi(10, 1.5, 0), Infeasible);
}

TEST(Generators, RegularAndPlanted) {
  const Graph r = make_random_regular(30, 4, 3);
  for (Vertex v = 0; v < 30; ++v) EXPECT_EQ(r.degree(v), 4u);
  EXPECT_THROW(make_random_regular(5, 3, 0), Infeasible);
  const Graph p = make_planted_clique(40, 0.0, 10, 9);
  EXPECT_EQ(p.num_edges(), 45u);
  EXPECT_EQ(oracle::triangle_count_matrix(p), 120u);
}

TEST(Generators, SeedDeterminism) {
  const auto a = make_erdos_renyi(50, 0.2, 4);
  const auto b = make_erdos_renyi(50, 0.2, 4);
  const auto c = make_erdos_renyi(50, 0.2, 5);
  EXPECT_TRUE(std::equal(a.edges().begin(), a.edges().end(), b.edges().begin(), b.edges().end()));
  EXPECT_FALSE(std::equal(a.edges().begin(), a.edges().end(), c.edges().begin(), c.edges().end()));
}

TEST(Specs, ParseAndPrintRoundTrip) {
  for (const char* s : {"clique:8", "grid:4x5", "barbell:12:1", "chain:3:8:1", "gnp:60:0.2", "regular:32:4",
                        "planted:60:0.1:10", "lollipop:8:20", "cycle:32", "path:64", "star:9"}) {
    const GraphSpec spec = parse_spec(s, 3);
    EXPECT_EQ(spec_string(spec), s);
    EXPECT_GT(generate(spec).num_vertices(), 0u);
  }
  for (const char* bad : {"", "clique", "grid:4", "gnp:10:x", "nope:3", "clique:-1", "chain:3:8"})
    EXPECT_THROW(parse_spec(bad), ParseError) << bad;
}
