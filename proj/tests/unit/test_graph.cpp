#include <gtest/gtest.h>

#include <numeric>
#include <sstream>

#include "expdecomp/generators.hpp"
#include "expdecomp/graph.hpp"
#include "support/oracles.hpp"

using namespace expdecomp;

namespace {

std::vector<Vertex> range(Vertex lo, Vertex hi) {
  std::vector<Vertex> v(hi - lo);
  std::iota(v.begin(), v.end(), lo);
  return v;
}

Rational as_rational(std::pair<std::int64_t, std::int64_t> p) { return Rational(p.first, p.second); }

}  // namespace

TEST(Volume, CliqueAndEmpty) {
  const Graph k4 = make_clique(4);
  const auto all = range(0, 4);
  EXPECT_EQ(volume(k4, all), 12u);
  EXPECT_EQ(volume(k4, std::vector<Vertex>{}), 0u);
}

TEST(Volume, BarbellSide) {
  const Graph g = make_barbell(4, 1);
  const auto side = range(0, 4);
  std::uint64_t expect = 0;
  for (Vertex v : side) expect += oracle::dense(g).deg[v];
  EXPECT_EQ(expect, 13u);
  EXPECT_EQ(volume(g, side), expect);
}

TEST(CutStats, K4Pair) {
  const Cut c = cut_stats(make_clique(4), std::vector<Vertex>{0, 1});
  EXPECT_EQ(c.boundary, 4u);
  EXPECT_EQ(c.vol_s, 6u);
  EXPECT_EQ(c.conductance, Rational(2, 3));
  EXPECT_EQ(c.balance, Rational(1, 2));
}

TEST(CutStats, BarbellAndCycle) {
  const Cut b = cut_stats(make_barbell(4, 1), range(0, 4));
  EXPECT_EQ(b.conductance, Rational(1, 13));
  EXPECT_EQ(b.balance, Rational(1, 2));
  const Cut c = cut_stats(make_cycle(6), range(0, 3));
  EXPECT_EQ(c.conductance, Rational(1, 3));
}

TEST(CutStats, DegenerateRejected) {
  const Graph k4 = make_clique(4);
  EXPECT_THROW(cut_stats(k4, std::vector<Vertex>{}), DegenerateCut);
  EXPECT_THROW(cut_stats(k4, range(0, 4)), DegenerateCut);
}

TEST(CutStats, ComplementSymmetry) {
  const Graph g = make_erdos_renyi(9, 0.4, 3);
  for (std::uint32_t mask = 1; mask + 1 < (1u << 9); ++mask) {
    std::vector<Vertex> s, t;
    for (Vertex v = 0; v < 9; ++v) (mask >> v & 1 ? s : t).push_back(v);
    EXPECT_EQ(cut_stats(g, s).conductance, cut_stats(g, t).conductance);
  }
}

TEST(Contract, K3Pair) {
  const Subgraph s = contract(make_clique(3), std::vector<Vertex>{0, 1});
  EXPECT_EQ(s.graph.num_edges(), 1u);
  EXPECT_EQ(s.graph.self_loops(0), 1u);
  EXPECT_EQ(s.graph.self_loops(1), 1u);
  EXPECT_EQ(s.graph.degree(0), 2u);
  EXPECT_EQ(s.graph.degree(1), 2u);
}

TEST(Contract, WholeSetIsIdentity) {
  const Graph g = make_grid(3, 4);
  const Subgraph s = contract(g, range(0, 12));
  EXPECT_TRUE(std::equal(g.edges().begin(), g.edges().end(), s.graph.edges().begin(), s.graph.edges().end()));
  for (Vertex v = 0; v < 12; ++v) EXPECT_EQ(s.graph.self_loops(v), 0u);
}

TEST(Contract, K4Triple) {
  const Subgraph s = contract(make_clique(4), std::vector<Vertex>{0, 1, 2});
  EXPECT_EQ(s.graph.num_edges(), 3u);
  for (Vertex v = 0; v < 3; ++v) {
    EXPECT_EQ(s.graph.self_loops(v), 1u);
    EXPECT_EQ(s.graph.degree(v), 3u);
  }
}

TEST(Contract, ConductanceAtMostLoopFree) {
  // Phi(G{S}) <= Phi(G[S]) on every subset of a small graph
  const Graph g = make_erdos_renyi(8, 0.5, 11);
  for (std::uint32_t mask = 1; mask < (1u << 8); ++mask) {
    std::vector<Vertex> s;
    for (Vertex v = 0; v < 8; ++v)
      if (mask >> v & 1) s.push_back(v);
    if (s.size() < 2) continue;
    const Subgraph c = contract(g, s);
    const Subgraph i = induced(g, s);
    if (i.graph.num_edges() == 0) continue;
    const auto pc = oracle::min_conductance(c.graph);
    const auto pi = oracle::min_conductance(i.graph);
    if (pi.second == 0) continue;
    EXPECT_LE(as_rational(pc), as_rational(pi));
  }
}

TEST(RemoveEdge, K2AndVolume) {
  const Graph k2 = make_clique(2);
  const Graph r = k2.remove_edge_to_loops(0, 1);
  EXPECT_EQ(r.num_edges(), 0u);
  EXPECT_EQ(r.degree(0), 1u);
  EXPECT_EQ(r.degree(1), 1u);
  const Graph g = make_erdos_renyi(20, 0.3, 4);
  const Edge e = g.edges()[3];
  EXPECT_EQ(g.remove_edge_to_loops(e.u, e.v).total_volume(), g.total_volume());
  EXPECT_THROW(k2.remove_edge_to_loops(0, 0), MissingEdge);
  EXPECT_THROW(r.remove_edge_to_loops(0, 1), MissingEdge);
}

TEST(RemoveEdge, TriangleBecomesPath) {
  const Graph r = make_clique(3).remove_edge_to_loops(0, 1);
  EXPECT_FALSE(r.has_edge(0, 1));
  EXPECT_TRUE(r.has_edge(0, 2));
  EXPECT_TRUE(r.has_edge(1, 2));
  for (Vertex v = 0; v < 3; ++v) EXPECT_EQ(r.degree(v), 2u);
}

TEST(RemoveEdge, DegreesSurviveRemovalAndContraction) {
  const Graph g = make_grid(4, 4);
  Graph h = g.remove_edge_to_loops(0, 1).remove_edge_to_loops(5, 9);
  const std::vector<Vertex> s{0, 1, 4, 5, 8, 9};
  const Subgraph c = contract(h, s);
  for (std::size_t i = 0; i < s.size(); ++i) EXPECT_EQ(c.graph.degree(static_cast<Vertex>(i)), g.degree(s[i]));
}

TEST(Oracle, KnownValues) {
  EXPECT_EQ(min_conductance_oracle(make_clique(4)).phi, Rational(2, 3));
  EXPECT_EQ(min_conductance_oracle(make_barbell(4, 1)).phi, Rational(1, 13));
  EXPECT_EQ(min_conductance_oracle(make_clique(2)).phi, Rational(1));
  EXPECT_THROW(min_conductance_oracle(make_path(17)), TooLarge);
}

TEST(Oracle, AgreesWithIndependentEnumeration) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Graph g = make_erdos_renyi(10, 0.35, seed);
    const auto w = min_conductance_oracle(g);
    EXPECT_EQ(w.phi, as_rational(oracle::min_conductance(g))) << "seed " << seed;
    if (!w.witness.empty() && w.witness.size() < g.num_vertices())
      EXPECT_EQ(cut_stats(g, w.witness).conductance, w.phi);
  }
}

TEST(Mixing, K2OneStep) { EXPECT_EQ(mixing_time_estimate(make_clique(2), 1e-3), 1u); }

TEST(Mixing, Disconnected) {
  const Graph g(4, std::vector<Edge>{{0, 1}, {2, 3}});
  EXPECT_THROW(mixing_time_estimate(g, 0.1), Disconnected);
}

TEST(Mixing, C4MatchesDensePowering) {
  const Graph c4 = make_cycle(4);
  const double tol = 1e-6;
  const auto d = oracle::dense(c4);
  std::size_t expect = 0;
  for (std::size_t t = 0;; ++t) {
    long double worst = 0;
    for (Vertex v = 0; v < 4; ++v) {
      std::vector<long double> p(4, 0.0L);
      p[v] = 1.0L;
      p = oracle::lazy_walk(d, p, t);
      long double l1 = 0;
      for (Vertex u = 0; u < 4; ++u) l1 += std::fabs(p[u] - 0.25L);
      worst = std::max(worst, l1);
    }
    if (worst <= tol) {
      expect = t;
      break;
    }
  }
  EXPECT_EQ(mixing_time_estimate(c4, tol), expect);
}

TEST(GraphIo, RoundTripAndRejections) {
  const Graph g = make_grid(3, 3);
  std::stringstream ss;
  write_graph(ss, g);
  const Graph h = read_graph(ss);
  EXPECT_TRUE(std::equal(g.edges().begin(), g.edges().end(), h.edges().begin(), h.edges().end()));
  for (const char* bad : {"p 3 1\n0 0\n", "p 3 2\n0 1\n1 0\n", "p 3 1\n0 5\n", "q 3 0\n", "p 3 2\n0 1\n"}) {
    std::stringstream in(bad);
    EXPECT_THROW(read_graph(in), ParseError) << bad;
  }
}

TEST(GraphCore, AdjacencySymmetricAndDegreeRule) {
  const Graph base = make_erdos_renyi(30, 0.2, 9);
  const Edge e = base.edges()[0];
  const Graph g = base.remove_edge_to_loops(e.u, e.v);
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    EXPECT_EQ(g.degree(v), g.neighbors(v).size() + g.self_loops(v));
    for (Vertex u : g.neighbors(v)) EXPECT_TRUE(g.has_edge(u, v));
  }
}
