#include <gtest/gtest.h>

#include "expdecomp/generators.hpp"
#include "expdecomp/verify.hpp"

using namespace expdecomp;

TEST(VerifyDecomposition, BarbellHalvesVsPhi) {
  const Graph g = make_barbell(4, 1);
  const std::vector<std::vector<Vertex>> halves{{0, 1, 2, 3}, {4, 5, 6, 7}};
  const auto ok = verify_decomposition(g, halves, 0.1, 0.1);
  EXPECT_TRUE(ok.partition_ok);
  EXPECT_EQ(ok.inter_edges, 1u);
  EXPECT_TRUE(ok.pass);
  // the whole barbell has conductance 1/13, so it fails a higher phi
  const auto whole = verify_decomposition(g, {{0, 1, 2, 3, 4, 5, 6, 7}}, 0.1, 1.0 / 12);
  EXPECT_FALSE(whole.pass);
  ASSERT_EQ(whole.components.size(), 1u);
  EXPECT_EQ(whole.components[0].method, ComponentCheck::Method::kOracle);
  EXPECT_EQ(*whole.components[0].phi_exact, Rational(1, 13));
}

TEST(VerifyDecomposition, DetectsTampering) {
  const Graph g = make_barbell(4, 1);
  // vertex 7 missing
  EXPECT_FALSE(verify_decomposition(g, {{0, 1, 2, 3}, {4, 5, 6}}, 0.5, 0.01).pass);
  // vertex 3 twice
  EXPECT_FALSE(verify_decomposition(g, {{0, 1, 2, 3}, {3, 4, 5, 6, 7}}, 0.5, 0.01).pass);
  // too many inter edges for eps
  EXPECT_FALSE(verify_decomposition(g, {{0, 1}, {2, 3}, {4, 5, 6, 7}}, 0.1, 0.01).pass);
}

TEST(Falsifier, CatchesPlantedCutInLargeComponent) {
  const Graph g = make_barbell(12, 1);
  const double best = sweep_falsifier(g, 200);
  EXPECT_LE(best, 1.0 / 100);
  VerifyOptions opt;
  std::vector<Vertex> all(24);
  for (Vertex v = 0; v < 24; ++v) all[v] = v;
  const auto c = check_component(g, all, 0.05, opt);
  EXPECT_EQ(c.method, ComponentCheck::Method::kFalsifier);
  EXPECT_FALSE(c.pass);
  const auto k = check_component(make_clique(20), std::vector<Vertex>(all.begin(), all.begin() + 20), 0.05, opt);
  EXPECT_TRUE(k.pass);
}

TEST(Falsifier, NeverBelowTrueConductance) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Graph g = make_erdos_renyi(12, 0.4, seed);
    if (g.num_edges() == 0) continue;
    const double exact = min_conductance_oracle(g).phi.to_double();
    EXPECT_GE(sweep_falsifier(g, 60) + 1e-12, exact);
  }
}
