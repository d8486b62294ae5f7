#pragma once

// Independent test oracles: dense matrices, plain BFS and exhaustive enumeration
// written against the edge list only, never against the library's own helpers.

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdint>
#include <deque>
#include <set>
#include <utility>
#include <vector>

#include "expdecomp/graph.hpp"

namespace oracle {

using expdecomp::Edge;
using expdecomp::Graph;
using expdecomp::Vertex;
using BigQ = boost::multiprecision::cpp_rational;

struct Dense {
  std::size_t n = 0;
  std::vector<std::vector<int>> adj;  // simple adjacency counts
  std::vector<int> loops;
  std::vector<int> deg;
};

inline Dense dense(const Graph& g) {
  Dense d;
  d.n = g.num_vertices();
  d.adj.assign(d.n, std::vector<int>(d.n, 0));
  d.loops.assign(d.n, 0);
  d.deg.assign(d.n, 0);
  for (const Edge& e : g.edges()) {
    ++d.adj[e.u][e.v];
    ++d.adj[e.v][e.u];
  }
  for (Vertex v = 0; v < d.n; ++v) {
    d.loops[v] = static_cast<int>(g.self_loops(v));
    int s = d.loops[v];
    for (Vertex u = 0; u < d.n; ++u) s += d.adj[v][u];
    d.deg[v] = s;
  }
  return d;
}

/// p_{t} = M p_{t-1}, M = (A D^-1 + I)/2 with loops in A; long double.
inline std::vector<long double> lazy_walk(const Dense& d, std::vector<long double> p, std::size_t steps) {
  for (std::size_t s = 0; s < steps; ++s) {
    std::vector<long double> q(d.n, 0.0L);
    for (std::size_t v = 0; v < d.n; ++v) {
      if (p[v] == 0.0L || d.deg[v] == 0) {
        q[v] += p[v];
        continue;
      }
      const long double share = p[v] / (2.0L * d.deg[v]);
      q[v] += p[v] / 2.0L + share * d.loops[v];
      for (std::size_t u = 0; u < d.n; ++u)
        if (d.adj[v][u]) q[u] += share * d.adj[v][u];
    }
    p = std::move(q);
  }
  return p;
}

/// Same walk in exact rationals.
inline std::vector<BigQ> lazy_walk_exact(const Dense& d, std::vector<BigQ> p, std::size_t steps) {
  for (std::size_t s = 0; s < steps; ++s) {
    std::vector<BigQ> q(d.n, BigQ(0));
    for (std::size_t v = 0; v < d.n; ++v) {
      if (p[v] == 0 || d.deg[v] == 0) {
        q[v] += p[v];
        continue;
      }
      const BigQ share = p[v] / (2 * d.deg[v]);
      q[v] += p[v] / 2 + share * d.loops[v];
      for (std::size_t u = 0; u < d.n; ++u)
        if (d.adj[v][u]) q[u] += share * d.adj[v][u];
    }
    p = std::move(q);
  }
  return p;
}

inline std::vector<int> bfs(const Graph& g, Vertex s) {
  std::vector<int> dist(g.num_vertices(), -1);
  std::deque<Vertex> q{s};
  dist[s] = 0;
  std::vector<std::vector<Vertex>> adj(g.num_vertices());
  for (const Edge& e : g.edges()) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  while (!q.empty()) {
    const Vertex v = q.front();
    q.pop_front();
    for (Vertex u : adj[v])
      if (dist[u] < 0) {
        dist[u] = dist[v] + 1;
        q.push_back(u);
      }
  }
  return dist;
}

/// |E(N^d(v))|: edges with an endpoint at distance < d.
inline std::size_t edges_within(const Graph& g, Vertex v, int d) {
  const auto dist = bfs(g, v);
  std::size_t c = 0;
  for (const Edge& e : g.edges()) {
    const bool a = dist[e.u] >= 0 && dist[e.u] < d;
    const bool b = dist[e.v] >= 0 && dist[e.v] < d;
    if (a || b) ++c;
  }
  return c;
}

/// Diameter of the subgraph induced on `members` (edges with both ends inside); -1 if disconnected.
inline int induced_diameter(const Graph& g, const std::vector<Vertex>& members) {
  std::vector<char> in(g.num_vertices(), 0);
  for (Vertex v : members) in[v] = 1;
  std::vector<std::vector<Vertex>> adj(g.num_vertices());
  for (const Edge& e : g.edges())
    if (in[e.u] && in[e.v]) {
      adj[e.u].push_back(e.v);
      adj[e.v].push_back(e.u);
    }
  int best = 0;
  for (Vertex s : members) {
    std::vector<int> dist(g.num_vertices(), -1);
    std::deque<Vertex> q{s};
    dist[s] = 0;
    std::size_t seen = 1;
    while (!q.empty()) {
      const Vertex v = q.front();
      q.pop_front();
      for (Vertex u : adj[v])
        if (dist[u] < 0) {
          dist[u] = dist[v] + 1;
          best = std::max(best, dist[u]);
          ++seen;
          q.push_back(u);
        }
    }
    if (seen != members.size()) return -1;
  }
  return best;
}

/// Minimum conductance by enumerating subsets (numerator, denominator of the best cut).
inline std::pair<std::int64_t, std::int64_t> min_conductance(const Graph& g) {
  const std::size_t n = g.num_vertices();
  const Dense d = dense(g);
  std::int64_t vol = 0;
  for (int x : d.deg) vol += x;
  std::pair<std::int64_t, std::int64_t> best{1, 0};  // +inf
  for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << n); ++mask) {
    std::int64_t vs = 0;
    std::int64_t cut = 0;
    for (std::size_t v = 0; v < n; ++v)
      if (mask >> v & 1) vs += d.deg[v];
    for (const Edge& e : g.edges())
      if (((mask >> e.u) & 1) != ((mask >> e.v) & 1)) ++cut;
    const std::int64_t den = std::min(vs, vol - vs);
    if (den == 0) continue;
    if (best.second == 0 || cut * best.second < best.first * den) best = {cut, den};
  }
  return best;
}

/// trace(A^3)/6 with dense integer matrices.
inline std::uint64_t triangle_count_matrix(const Graph& g) {
  const Dense d = dense(g);
  const std::size_t n = d.n;
  std::vector<std::vector<std::int64_t>> a2(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      if (d.adj[i][k])
        for (std::size_t j = 0; j < n; ++j) a2[i][j] += d.adj[i][k] * d.adj[k][j];
  std::int64_t tr = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) tr += a2[i][k] * d.adj[k][i];
  return static_cast<std::uint64_t>(tr / 6);
}

/// Binomial standard deviation of the mean of `trials` Bernoulli(p) draws.
inline double mean_sigma(double p, double trials) { return std::sqrt(p * (1 - p) / trials); }

}  // namespace oracle
