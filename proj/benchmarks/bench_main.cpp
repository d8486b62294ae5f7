#include <benchmark/benchmark.h>

#include "expdecomp/expander_decomp.hpp"
#include "expdecomp/generators.hpp"
#include "expdecomp/low_diam.hpp"
#include "expdecomp/sparse_cut.hpp"
#include "expdecomp/triangles.hpp"
#include "expdecomp/walks.hpp"

using namespace expdecomp;

namespace {

NetworkConfig accounted() {
  NetworkConfig c;
  c.mode = ExecutionMode::kAccounted;
  return c;
}

void BM_Generate(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(make_erdos_renyi(n, 0.1, 1));
}
BENCHMARK(BM_Generate)->Arg(64)->Arg(256)->Arg(1024);

void BM_WalkStep(benchmark::State& st) {
  const Graph g = make_grid(static_cast<std::size_t>(st.range(0)), static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) {
    FixedWalk w(g, 0, 1e-6);
    for (int i = 0; i < 64; ++i) w.step();
    benchmark::DoNotOptimize(w.mass().data());
  }
}
BENCHMARK(BM_WalkStep)->Arg(8)->Arg(16)->Arg(32);

void BM_ApproximateNibble(benchmark::State& st, ExecutionMode mode) {
  const Graph g = make_barbell(static_cast<std::size_t>(st.range(0)), 1);
  const NibbleParams p = derive_nibble_params((g.total_volume() + 1) / 2, 0.05, Profile::kDesk);
  NetworkConfig nc;
  nc.mode = mode;
  for (auto _ : st) {
    Network net(g, nc);
    benchmark::DoNotOptimize(approximate_nibble(net, g, 0, p, 1));
  }
}
BENCHMARK_CAPTURE(BM_ApproximateNibble, accounted, ExecutionMode::kAccounted)->Arg(6)->Arg(10);
BENCHMARK_CAPTURE(BM_ApproximateNibble, simulated, ExecutionMode::kSimulated)->Arg(6);

void BM_Clustering(benchmark::State& st) {
  const Graph g = make_cycle(static_cast<std::size_t>(st.range(0)));
  std::uint64_t seed = 0;
  for (auto _ : st) {
    Network net(g, accounted());
    benchmark::DoNotOptimize(exp_shift_clustering(net, 0.1, seed++));
  }
}
BENCHMARK(BM_Clustering)->Arg(32)->Arg(256);

void BM_LowDiam(benchmark::State& st) {
  const Graph g = make_erdos_renyi(static_cast<std::size_t>(st.range(0)), 0.1, 3);
  std::uint64_t seed = 0;
  for (auto _ : st) {
    Network net(g, accounted());
    benchmark::DoNotOptimize(low_diam_decomposition(net, 0.2, 10, seed++));
  }
}
BENCHMARK(BM_LowDiam)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_Decompose(benchmark::State& st) {
  const Graph g = make_cliques_chain(3, static_cast<std::size_t>(st.range(0)), 1);
  DecompConfig cfg;
  cfg.network = accounted();
  cfg.verify = false;
  for (auto _ : st) {
    Network net(g, cfg.network);
    benchmark::DoNotOptimize(expander_decomposition(net, 0.5, 2, 1, cfg));
  }
}
BENCHMARK(BM_Decompose)->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_Triangles(benchmark::State& st) {
  const Graph g = make_erdos_renyi(static_cast<std::size_t>(st.range(0)), 0.3, 5);
  TriangleConfig tc;
  tc.decomp.network = accounted();
  for (auto _ : st) {
    Network net(g, tc.decomp.network);
    benchmark::DoNotOptimize(triangle_enumeration(net, 1.0 / 6.0, 2, 1, tc));
  }
}
BENCHMARK(BM_Triangles)->Arg(24)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_BruteForceTriangles(benchmark::State& st) {
  const Graph g = make_erdos_renyi(static_cast<std::size_t>(st.range(0)), 0.3, 5);
  for (auto _ : st) benchmark::DoNotOptimize(brute_force_triangles(g));
}
BENCHMARK(BM_BruteForceTriangles)->Arg(40)->Arg(400);

}  // namespace
BENCHMARK_MAIN();
