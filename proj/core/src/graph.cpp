#include "expdecomp/graph.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <string>

namespace expdecomp {

Graph::Graph(std::size_t n) : offsets_(n + 1, 0), loops_(n, 0) {}

Graph::Graph(std::size_t n, std::span<const Edge> edges, std::vector<std::uint32_t> loops)
    : loops_(std::move(loops)) {
  if (loops_.empty()) loops_.assign(n, 0);
  if (loops_.size() != n) throw std::invalid_argument("loop vector size differs from n");
  edges_.reserve(edges.size());
  for (const Edge& e : edges) {
    if (e.u == e.v) throw std::invalid_argument("self loop in simple edge list");
    if (e.u >= n || e.v >= n) throw std::invalid_argument("edge endpoint out of range");
    edges_.push_back(make_edge(e.u, e.v));
  }
  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) {
    throw std::invalid_argument("duplicate edge");
  }
  offsets_.assign(n + 1, 0);
  for (const Edge& e : edges_) {
    ++offsets_[e.u + 1];
    ++offsets_[e.v + 1];
  }
  for (std::size_t v = 0; v < n; ++v) offsets_[v + 1] += offsets_[v];
  targets_.resize(2 * edges_.size());
  edge_ids_.resize(2 * edges_.size());
  std::vector<std::uint32_t> pos(offsets_.begin(), offsets_.end() - 1);
  // Edges are sorted by (u, v), so both endpoint lists come out sorted by neighbor.
  for (EdgeId id = 0; id < edges_.size(); ++id) {
    const Edge& e = edges_[id];
    targets_[pos[e.u]] = e.v;
    edge_ids_[pos[e.u]++] = id;
  }
  for (EdgeId id = 0; id < edges_.size(); ++id) {
    const Edge& e = edges_[id];
    targets_[pos[e.v]] = e.u;
    edge_ids_[pos[e.v]++] = id;
  }
  for (std::size_t v = 0; v < n; ++v) {
    // the second pass appended smaller neighbors after larger ones; restore order
    const auto b = offsets_[v];
    const auto e = offsets_[v + 1];
    std::vector<std::pair<Vertex, EdgeId>> tmp;
    tmp.reserve(e - b);
    for (auto i = b; i < e; ++i) tmp.emplace_back(targets_[i], edge_ids_[i]);
    std::sort(tmp.begin(), tmp.end());
    for (auto i = b; i < e; ++i) {
      targets_[i] = tmp[i - b].first;
      edge_ids_[i] = tmp[i - b].second;
    }
  }
  volume_ = 2 * edges_.size();
  for (auto l : loops_) volume_ += l;
}

std::optional<EdgeId> Graph::find_edge(Vertex u, Vertex v) const {
  if (u >= num_vertices() || v >= num_vertices()) return std::nullopt;
  const auto nb = neighbors(u);
  const auto it = std::lower_bound(nb.begin(), nb.end(), v);
  if (it == nb.end() || *it != v) return std::nullopt;
  return incident_edges(u)[static_cast<std::size_t>(it - nb.begin())];
}

Graph Graph::remove_edge_to_loops(Vertex u, Vertex v) const {
  const Edge e = make_edge(u, v);
  return remove_edges_to_loops(std::span<const Edge>(&e, 1));
}

Graph Graph::remove_edges_to_loops(std::span<const Edge> removed) const {
  std::vector<char> gone(edges_.size(), 0);
  std::vector<std::uint32_t> loops = loops_;
  for (const Edge& r : removed) {
    const auto id = find_edge(r.u, r.v);
    if (!id || gone[*id]) {
      throw MissingEdge("edge {" + std::to_string(r.u) + "," + std::to_string(r.v) + "} not present");
    }
    gone[*id] = 1;
    ++loops[r.u];
    ++loops[r.v];
  }
  std::vector<Edge> kept;
  kept.reserve(edges_.size() - removed.size());
  for (EdgeId id = 0; id < edges_.size(); ++id) {
    if (!gone[id]) kept.push_back(edges_[id]);
  }
  return Graph(num_vertices(), kept, std::move(loops));
}

std::vector<char> make_mask(std::size_t n, std::span<const Vertex> s) {
  std::vector<char> mask(n, 0);
  for (Vertex v : s) {
    if (v >= n) throw std::invalid_argument("vertex out of range");
    mask[v] = 1;
  }
  return mask;
}

std::uint64_t volume(const Graph& g, std::span<const Vertex> s) {
  std::uint64_t vol = 0;
  for (Vertex v : s) vol += g.degree(v);
  return vol;
}

std::uint64_t boundary_size(const Graph& g, const std::vector<char>& mask) {
  std::uint64_t b = 0;
  for (const Edge& e : g.edges()) b += (mask[e.u] != mask[e.v]);
  return b;
}

std::uint64_t boundary_size(const Graph& g, std::span<const Vertex> s) {
  return boundary_size(g, make_mask(g.num_vertices(), s));
}

double conductance_value(std::uint64_t boundary, std::uint64_t vol_s, std::uint64_t vol_total) {
  const std::uint64_t denom = std::min(vol_s, vol_total - vol_s);
  if (denom == 0) return 0.0;
  return static_cast<double>(boundary) / static_cast<double>(denom);
}

Cut cut_stats(const Graph& g, std::span<const Vertex> s) {
  auto mask = make_mask(g.num_vertices(), s);
  Cut c;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (mask[v]) c.members.push_back(v);
  }
  if (c.members.empty() || c.members.size() == g.num_vertices()) {
    throw DegenerateCut("cut must be a proper non-empty subset");
  }
  c.vol_s = volume(g, c.members);
  c.vol_rest = g.total_volume() - c.vol_s;
  c.boundary = boundary_size(g, mask);
  const std::uint64_t denom = std::min(c.vol_s, c.vol_rest);
  c.conductance = denom == 0 ? Rational(0) : Rational(static_cast<std::int64_t>(c.boundary),
                                                      static_cast<std::int64_t>(denom));
  c.balance = g.total_volume() == 0
                  ? Rational(0)
                  : Rational(static_cast<std::int64_t>(denom), static_cast<std::int64_t>(g.total_volume()));
  return c;
}

Subgraph contract(const Graph& g, std::span<const Vertex> s) {
  Subgraph out;
  const std::size_t n = g.num_vertices();
  std::vector<std::uint32_t> local(n, kUnreached);
  std::vector<Vertex> sorted(s.begin(), s.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) local[sorted[i]] = static_cast<std::uint32_t>(i);
  std::vector<Edge> edges;
  std::vector<std::uint32_t> loops(sorted.size(), 0);
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const Vertex v = sorted[i];
    std::uint32_t outside = 0;
    for (Vertex u : g.neighbors(v)) {
      if (local[u] == kUnreached) {
        ++outside;
      } else if (u > v) {
        edges.push_back({static_cast<Vertex>(i), local[u]});
      }
    }
    loops[i] = g.self_loops(v) + outside;
  }
  out.graph = Graph(sorted.size(), edges, std::move(loops));
  out.to_parent = std::move(sorted);
  return out;
}

Graph restrict_to(const Graph& g, std::span<const Vertex> s) {
  const std::size_t n = g.num_vertices();
  const auto mask = make_mask(n, s);
  std::vector<Edge> edges;
  std::vector<std::uint32_t> loops(n, 0);
  for (const Edge& e : g.edges()) {
    if (mask[e.u] && mask[e.v]) edges.push_back(e);
  }
  for (Vertex v = 0; v < n; ++v) {
    if (!mask[v]) continue;
    std::uint32_t outside = 0;
    for (Vertex u : g.neighbors(v)) outside += !mask[u];
    loops[v] = g.self_loops(v) + outside;
  }
  return Graph(n, edges, std::move(loops));
}

Subgraph induced(const Graph& g, std::span<const Vertex> s) {
  Subgraph c = contract(g, s);
  std::vector<Edge> edges(c.graph.edges().begin(), c.graph.edges().end());
  c.graph = Graph(c.to_parent.size(), edges);
  return c;
}

ConductanceWitness min_conductance_oracle(const Graph& g, std::size_t n_max) {
  const std::size_t n = g.num_vertices();
  if (n > n_max) throw TooLarge("exhaustive conductance limited to n <= " + std::to_string(n_max));
  if (n < 2) throw std::invalid_argument("conductance needs at least two vertices");
  std::vector<std::uint32_t> adj(n, 0);
  for (const Edge& e : g.edges()) {
    adj[e.u] |= 1u << e.v;
    adj[e.v] |= 1u << e.u;
  }
  const std::uint64_t total = g.total_volume();
  const std::uint32_t full = (n == 32) ? 0xffffffffu : ((1u << n) - 1);
  bool have = false;
  std::uint64_t best_b = 0;
  std::uint64_t best_d = 1;
  std::uint32_t best_mask = 0;
  for (std::uint32_t mask = 1; mask < full; ++mask) {
    std::uint64_t vol = 0;
    std::uint64_t b = 0;
    for (std::uint32_t rest = mask; rest != 0; rest &= rest - 1) {
      const int v = std::countr_zero(rest);
      vol += g.degree(static_cast<Vertex>(v));
      b += static_cast<std::uint64_t>(std::popcount(adj[v] & ~mask));
    }
    const std::uint64_t d = std::min(vol, total - vol);
    std::uint64_t num = b;
    std::uint64_t den = d;
    if (d == 0) {
      num = 0;
      den = 1;
    }
    if (!have || static_cast<__int128>(num) * best_d < static_cast<__int128>(best_b) * den) {
      have = true;
      best_b = num;
      best_d = den;
      best_mask = mask;
    }
  }
  ConductanceWitness w;
  w.phi = Rational(static_cast<std::int64_t>(best_b), static_cast<std::int64_t>(best_d));
  for (std::uint32_t v = 0; v < n; ++v) {
    if (best_mask & (1u << v)) w.witness.push_back(v);
  }
  return w;
}

std::size_t mixing_time_estimate(const Graph& g, double tol, std::size_t max_steps) {
  const std::size_t n = g.num_vertices();
  if (n == 0) return 0;
  if (connected_components(g).count != 1) throw Disconnected("mixing time needs a connected graph");
  const double total = static_cast<double>(g.total_volume());
  if (n == 1) return 0;
  std::vector<double> psi(n);
  for (Vertex v = 0; v < n; ++v) psi[v] = static_cast<double>(g.degree(v)) / total;
  // dist[s * n + v] holds p_t^s(v)
  std::vector<double> dist(n * n, 0.0);
  std::vector<double> next(n * n, 0.0);
  for (Vertex s = 0; s < n; ++s) dist[s * n + s] = 1.0;
  auto worst = [&] {
    double w = 0.0;
    for (Vertex s = 0; s < n; ++s) {
      double l1 = 0.0;
      for (Vertex v = 0; v < n; ++v) l1 += std::abs(dist[s * n + v] - psi[v]);
      w = std::max(w, l1);
    }
    return w;
  };
  for (std::size_t t = 0; t <= max_steps; ++t) {
    if (worst() <= tol) return t;
    for (Vertex s = 0; s < n; ++s) {
      const double* p = &dist[s * n];
      double* q = &next[s * n];
      for (Vertex v = 0; v < n; ++v) {
        const double deg = static_cast<double>(g.degree(v));
        q[v] = p[v] / 2 + (p[v] / (2 * deg)) * g.self_loops(v);
      }
      for (const Edge& e : g.edges()) {
        q[e.v] += p[e.u] / (2 * static_cast<double>(g.degree(e.u)));
        q[e.u] += p[e.v] / (2 * static_cast<double>(g.degree(e.v)));
      }
    }
    dist.swap(next);
  }
  throw std::runtime_error("mixing time exceeds step cap");
}

std::vector<std::vector<Vertex>> Components::groups() const {
  std::vector<std::vector<Vertex>> out(count);
  for (Vertex v = 0; v < label.size(); ++v) out[label[v]].push_back(v);
  return out;
}

Components connected_components(const Graph& g) {
  return connected_components_if(g, [](EdgeId) { return true; });
}

std::vector<std::uint32_t> bfs_distances(const Graph& g, Vertex source) {
  std::vector<std::uint32_t> dist(g.num_vertices(), kUnreached);
  std::queue<Vertex> q;
  dist[source] = 0;
  q.push(source);
  while (!q.empty()) {
    const Vertex x = q.front();
    q.pop();
    for (Vertex y : g.neighbors(x)) {
      if (dist[y] == kUnreached) {
        dist[y] = dist[x] + 1;
        q.push(y);
      }
    }
  }
  return dist;
}

std::uint32_t diameter(const Graph& g) {
  std::uint32_t d = 0;
  for (Vertex s = 0; s < g.num_vertices(); ++s) {
    for (auto x : bfs_distances(g, s)) {
      if (x == kUnreached) return kUnreached;
      d = std::max(d, x);
    }
  }
  return d;
}

}  // namespace expdecomp
