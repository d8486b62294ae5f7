#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "expdecomp/congest.hpp"
#include "expdecomp/generators.hpp"
#include "support/oracles.hpp"

using namespace expdecomp;

namespace {

Network simulated(const Graph& g, unsigned threads = 1) {
  NetworkConfig c;
  c.mode = ExecutionMode::kSimulated;
  c.threads = threads;
  c.min_chunk = 1;
  return Network(g, c);
}

Network accounted(const Graph& g) {
  NetworkConfig c;
  c.mode = ExecutionMode::kAccounted;
  return Network(g, c);
}

/// Flood a token from `src`; returns rounds until every vertex holds it.
std::uint64_t flood(Network& net, Vertex src) {
  const std::size_t n = net.size();
  std::vector<char> has(n, 0);
  has[src] = 1;
  std::uint64_t rounds = 0;
  while (std::count(has.begin(), has.end(), 1) < static_cast<long>(n)) {
    std::vector<char> fresh = has;
    net.run_round([&](Vertex v, std::span<const Incoming>, Outbox& out) {
      if (!has[v]) return;
      for (Vertex u : net.graph().neighbors(v)) out.send(u, Message{1, 1, {}, nullptr});
    });
    for (Vertex v = 0; v < n; ++v)
      if (!net.inbox(v).empty()) fresh[v] = 1;
    has = fresh;
    ++rounds;
  }
  return rounds;
}

}  // namespace

TEST(Network, BandwidthBudget) {
  Network net = simulated(make_path(7));
  EXPECT_EQ(net.id_bits(), 3u);
  EXPECT_EQ(net.bandwidth_bits(), 192u);
  EXPECT_NO_THROW(net.run_round([](Vertex v, std::span<const Incoming>, Outbox& out) {
    if (v == 0) out.send(1, Message{0, 192, {}, nullptr});
  }));
  EXPECT_THROW(net.run_round([](Vertex v, std::span<const Incoming>, Outbox& out) {
                 if (v == 0) {
                   out.send(1, Message{0, 100, {}, nullptr});
                   out.send(1, Message{0, 93, {}, nullptr});
                 }
               }),
               BandwidthExceeded);
}

TEST(Network, FramedRoundCostsFrames) {
  Network net = simulated(make_path(3));
  net.run_framed_round([&](Vertex v, std::span<const Incoming>, Outbox& out) {
    if (v == 0) out.send(1, Message{0, static_cast<std::uint32_t>(net.bandwidth_bits() * 3 + 1), {}, nullptr});
  });
  EXPECT_EQ(net.ledger().totals().rounds, 4u);
  EXPECT_EQ(net.ledger().totals().messages, 4u);
}

TEST(Network, InboxSeesPreviousRoundOnly) {
  Network net = simulated(make_path(3));
  std::vector<std::size_t> seen(3, 0);
  for (int r = 0; r < 2; ++r) {
    net.run_round([&](Vertex v, std::span<const Incoming> in, Outbox& out) {
      seen[v] += in.size();
      if (r == 0 && v == 1) {
        out.send(0, Message{});
        out.send(2, Message{});
      }
    });
  }
  EXPECT_EQ(seen, (std::vector<std::size_t>{1, 0, 1}));
}

TEST(Network, FloodOnP5TakesEccentricity) {
  Network net = simulated(make_path(5));
  EXPECT_EQ(flood(net, 0), 4u);
  Network mid = simulated(make_path(5));
  EXPECT_EQ(flood(mid, 2), 2u);
}

TEST(Bfs, MatchesOracleDistancesAndCharges) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Graph g = make_erdos_renyi(40, 0.1, seed);
    Network net = simulated(g);
    const BfsTree t = bfs_tree(net, 0);
    const auto dist = oracle::bfs(g, 0);
    std::uint32_t ecc = 0;
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
      if (dist[v] < 0) {
        EXPECT_FALSE(t.contains(v));
        continue;
      }
      EXPECT_EQ(t.depth[v], static_cast<std::uint32_t>(dist[v]));
      ecc = std::max<std::uint32_t>(ecc, dist[v]);
      if (v != 0) {
        // smallest-id neighbour one layer up
        Vertex best = kUnreached;
        for (Vertex u : g.neighbors(v))
          if (dist[u] == dist[v] - 1) best = std::min(best, u);
        EXPECT_EQ(t.parent[v], best);
      }
    }
    EXPECT_EQ(t.height, ecc);
    EXPECT_EQ(net.ledger().totals().rounds, ecc);

    Network acc = accounted(g);
    const BfsTree c = bfs_tree(acc, 0);
    EXPECT_EQ(c.parent, t.parent);
    EXPECT_EQ(c.children, t.children);
    EXPECT_EQ(acc.ledger(), net.ledger());
  }
}

TEST(Tree, ConvergecastAndBroadcast) {
  const Graph g = make_grid(5, 6);
  for (auto mode : {ExecutionMode::kSimulated, ExecutionMode::kAccounted}) {
    Network net(g, NetworkConfig{64, mode, 1});
    const BfsTree t = bfs_tree_central(g, 7);
    std::vector<std::uint64_t> vals(g.num_vertices());
    std::iota(vals.begin(), vals.end(), 1);
    const auto before = net.ledger().totals();
    EXPECT_EQ(tree_sum(net, t, vals), 30u * 31u / 2u);
    EXPECT_EQ(net.ledger().totals().rounds - before.rounds, t.height);
    EXPECT_EQ(tree_max(net, t, vals), 30u);
    const auto seen = broadcast_value(net, t, 99);
    for (Vertex v : t.order) EXPECT_EQ(seen[v], 99u);
    const auto sums = subtree_sums(net, t, vals);
    for (Vertex v : t.order) {
      std::uint64_t s = vals[v];
      for (Vertex c : t.children[v]) s += sums[c];
      EXPECT_EQ(sums[v], s);
    }
  }
}

TEST(Tree, ModesChargeTheSame) {
  const Graph g = make_barbell(6, 1);
  Network a = simulated(g);
  Network b = accounted(g);
  for (Network* net : {&a, &b}) {
    const BfsTree t = bfs_tree(*net, 3);
    std::vector<std::uint64_t> w(g.num_vertices());
    for (Vertex v = 0; v < g.num_vertices(); ++v) w[v] = g.degree(v);
    tree_sum(*net, t, w);
    broadcast_value(*net, t, 5);
  }
  EXPECT_EQ(a.ledger(), b.ledger());
}

TEST(Ledger, PhasesAndComposition) {
  RoundLedger l;
  {
    RoundLedger::Scope s(l, "walk");
    l.record(3, 10, 8);
  }
  l.record(2, 1, 4);
  EXPECT_EQ(l.phase_totals("walk").rounds, 3u);
  EXPECT_EQ(l.phase_totals("default").rounds, 2u);
  EXPECT_EQ(l.totals().messages, 11u);
  EXPECT_EQ(l.totals().max_bits, 8u);

  RoundLedger p1, p2;
  p1.record(5, 1, 1);
  p2.record(7, 2, 1);
  RoundLedger par;
  const std::vector<RoundLedger> parts{p1, p2};
  par.append_parallel(parts, 2);
  EXPECT_EQ(par.totals().rounds, 14u);
  EXPECT_EQ(par.totals().messages, 3u);
}

TEST(Sampling, TokensFollowDegreeWeights) {
  const Graph g = make_lollipop(6, 4);
  Network net = simulated(g);
  const BfsTree t = bfs_tree_central(g, 0);
  std::vector<std::uint64_t> w(g.num_vertices());
  for (Vertex v = 0; v < g.num_vertices(); ++v) w[v] = g.degree(v);
  const std::uint64_t total = std::accumulate(w.begin(), w.end(), std::uint64_t{0});
  const std::uint64_t tokens = 20000;
  const std::vector<std::uint64_t> counts{tokens};
  const auto placed = sample_by_degree(net, t, w, counts, 42);
  ASSERT_EQ(placed.size(), tokens);
  std::vector<double> hits(g.num_vertices(), 0);
  for (const auto& p : placed) {
    EXPECT_EQ(p.b, 1u);
    hits[p.vertex] += 1;
  }
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    const double q = static_cast<double>(w[v]) / static_cast<double>(total);
    const double sd = std::sqrt(tokens * q * (1 - q));
    EXPECT_NEAR(hits[v], tokens * q, 5 * sd) << "vertex " << v;
  }
}

TEST(Sampling, ModesAgree) {
  const Graph g = make_grid(4, 5);
  const BfsTree t = bfs_tree_central(g, 0);
  std::vector<std::uint64_t> w(g.num_vertices());
  for (Vertex v = 0; v < g.num_vertices(); ++v) w[v] = g.degree(v);
  const std::vector<std::uint64_t> counts{7, 3, 1};
  Network a = simulated(g);
  Network b = accounted(g);
  EXPECT_EQ(sample_by_degree(a, t, w, counts, 9), sample_by_degree(b, t, w, counts, 9));
  EXPECT_EQ(a.ledger(), b.ledger());
}

TEST(Search, MatchesLinearScan) {
  const Graph g = make_erdos_renyi(30, 0.2, 5);
  const BfsTree t = bfs_tree_central(g, 0);
  Rng gen = make_rng(1, {77});
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<char> in(g.num_vertices(), 0);
    std::vector<SearchKey> keys(g.num_vertices());
    std::vector<std::uint64_t> weights(g.num_vertices(), 0);
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
      in[v] = t.contains(v) && uniform01(gen) < 0.7;
      keys[v] = {uniform_int(gen, 0, 50), g.degree(v) + 1, v};
      weights[v] = g.degree(v);
    }
    std::vector<Vertex> sorted;
    for (Vertex v = 0; v < g.num_vertices(); ++v)
      if (in[v]) sorted.push_back(v);
    std::sort(sorted.begin(), sorted.end(), [&](Vertex a, Vertex b) { return sweep_before(keys[a], keys[b]); });
    const std::uint64_t cap = uniform_int(gen, 0, 120);
    const PrefixPredicate pred = [&](std::size_t, std::uint64_t pw) { return pw <= cap; };
    std::size_t expect = 0;
    std::uint64_t pw = 0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      pw += weights[sorted[i]];
      if (pw <= cap) expect = i + 1;
    }
    Network a = simulated(g);
    Network b = accounted(g);
    Rng ra = make_rng(trial, {1});
    Rng rb = make_rng(trial, {1});
    const SearchResult x = random_binary_search(a, t, in, keys, weights, pred, ra);
    const SweepIndex ix = make_sweep_index(t, in, keys, weights);
    const SearchResult y = random_binary_search_sorted(b, t, ix, pred, rb);
    EXPECT_EQ(x.index, expect);
    EXPECT_EQ(y.index, expect);
    EXPECT_EQ(x.prefix_weight, y.prefix_weight);
    EXPECT_EQ(x.iterations, y.iterations);
    EXPECT_EQ(a.ledger(), b.ledger());
    if (expect > 0) EXPECT_EQ(x.boundary, std::optional<Vertex>(sorted[expect - 1]));
  }
}

TEST(Search, RankedIterationsLogarithmic) {
  Rng rng = make_rng(3, {});
  double total = 0;
  const int reps = 200;
  for (int r = 0; r < reps; ++r) {
    const auto res = ranked_binary_search(1024, [](std::size_t i) { return i <= 300; }, rng);
    EXPECT_EQ(res.index, 300u);
    total += res.iterations;
  }
  // uniform pivots: expected iterations ~ 2 ln(size)
  EXPECT_LT(total / reps, 3.0 * std::log(1024.0));
}

TEST(Determinism, ThreadCountDoesNotChangeRuns) {
  const Graph g = make_erdos_renyi(80, 0.08, 12);
  Network one = simulated(g, 1);
  Network four = simulated(g, 4);
  const BfsTree a = bfs_tree(one, 5);
  const BfsTree b = bfs_tree(four, 5);
  EXPECT_EQ(a.parent, b.parent);
  std::vector<std::uint64_t> w(g.num_vertices(), 1);
  const std::vector<std::uint64_t> counts{50, 20};
  EXPECT_EQ(sample_by_degree(one, a, w, counts, 3), sample_by_degree(four, b, w, counts, 3));
  EXPECT_EQ(one.ledger(), four.ledger());
}
