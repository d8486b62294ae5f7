#include "expdecomp/triangles.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace expdecomp {

std::vector<Triangle> brute_force_triangles(const Graph& g) {
  const std::size_t n = g.num_vertices();
  if (n > 2000) throw TooLarge("brute_force_triangles is limited to n <= 2000");
  std::vector<std::vector<Vertex>> up(n);
  for (const Edge& e : g.edges()) up[e.u].push_back(e.v);
  for (auto& a : up) std::sort(a.begin(), a.end());
  std::vector<Triangle> out;
  std::vector<Vertex> common;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v : up[u]) {
      common.clear();
      std::set_intersection(up[u].begin(), up[u].end(), up[v].begin(), up[v].end(), std::back_inserter(common));
      for (Vertex w : common) out.push_back({u, v, w});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

ComponentEnumeration enumerate_component(const Graph& g, std::span<const Vertex> component,
                                         std::span<const std::uint32_t> label) {
  ComponentEnumeration r;
  const std::size_t size = component.size();
  if (size == 0) return r;
  const std::uint32_t me = label[component.front()];
  const auto nb = static_cast<std::uint32_t>(std::ceil(std::cbrt(static_cast<double>(size)) - 1e-9));
  r.buckets = std::max<std::uint32_t>(1, nb);
  const std::uint32_t gb = r.buckets;
  std::vector<Vertex> sorted(component.begin(), component.end());
  std::sort(sorted.begin(), sorted.end());
  std::map<Vertex, std::uint32_t> rank;
  for (std::size_t i = 0; i < sorted.size(); ++i) rank[sorted[i]] = static_cast<std::uint32_t>(i);
  auto inside = [&](Vertex x) { return label[x] == me; };
  auto bucket = [&](Vertex x) -> std::uint32_t {
    if (inside(x)) return static_cast<std::uint32_t>(static_cast<std::uint64_t>(rank[x]) * gb / size);
    return x % gb;
  };

  // bucket triples a <= b <= c, assigned round-robin over the members ordered by degree then id
  std::vector<std::array<std::uint32_t, 3>> triples;
  for (std::uint32_t a = 0; a < gb; ++a)
    for (std::uint32_t b = a; b < gb; ++b)
      for (std::uint32_t c = b; c < gb; ++c) triples.push_back({a, b, c});
  r.triples = triples.size();
  std::vector<Vertex> by_load = sorted;
  std::stable_sort(by_load.begin(), by_load.end(), [&](Vertex x, Vertex y) { return g.degree(x) > g.degree(y); });
  std::map<std::array<std::uint32_t, 3>, Vertex> owner;
  for (std::size_t i = 0; i < triples.size(); ++i) owner[triples[i]] = by_load[i % by_load.size()];

  // E(V_i) and the boundary edges, with the bucket pair of each
  std::vector<Edge> edges;
  for (Vertex x : sorted)
    for (Vertex y : g.neighbors(x))
      if (!inside(y) || x < y) edges.push_back(make_edge(x, y));
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  // load: every triple owner receives the edges whose bucket pair lies in its triple
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint64_t> pair_count;
  for (const Edge& e : edges) {
    auto p = std::minmax(bucket(e.u), bucket(e.v));
    ++pair_count[{p.first, p.second}];
  }
  std::map<Vertex, std::uint64_t> load;
  for (const auto& t : triples) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs{{t[0], t[1]}, {t[1], t[2]}, {t[0], t[2]}};
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    std::uint64_t l = 0;
    for (const auto& p : pairs) {
      auto it = pair_count.find(p);
      if (it != pair_count.end()) l += it->second;
    }
    load[owner[t]] += l;
  }
  for (const auto& [v, l] : load) {
    r.delivered += l;
    const std::uint64_t deg = std::max<std::uint64_t>(1, g.simple_degree(v));
    r.batches = std::max(r.batches, (l + deg - 1) / deg);
  }

  // each owner intersects its edge lists; the result is every triangle of the delivered edges
  // with at least one intra-component edge, reported by the owner of its bucket triple
  std::vector<std::vector<Vertex>> adj(g.num_vertices());
  for (const Edge& e : edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  std::vector<Vertex> common;
  for (const Edge& e : edges) {
    if (!inside(e.u) || !inside(e.v)) continue;
    common.clear();
    std::set_intersection(adj[e.u].begin(), adj[e.u].end(), adj[e.v].begin(), adj[e.v].end(),
                          std::back_inserter(common));
    for (Vertex w : common) {
      Triangle t{e.u, e.v, w};
      std::sort(t.begin(), t.end());
      // count each triangle once: from its smallest intra edge
      const Edge first = inside(t[0]) && inside(t[1]) ? Edge{t[0], t[1]}
                         : inside(t[0]) && inside(t[2]) ? Edge{t[0], t[2]}
                                                          : Edge{t[1], t[2]};
      if (!(first == e)) continue;
      std::array<std::uint32_t, 3> key{bucket(t[0]), bucket(t[1]), bucket(t[2])};
      std::sort(key.begin(), key.end());
      r.triangles.push_back(t);
      r.reporters.push_back(owner[key]);
    }
  }
  return r;
}

TriangleResult triangle_enumeration(Network& net, double epsilon, std::uint32_t k, std::uint64_t seed,
                                    const TriangleConfig& cfg) {
  if (!(epsilon > 0.0) || epsilon > 1.0 / 6.0) throw BadEpsilon("triangle enumeration needs 0 < epsilon <= 1/6");
  const Graph& g0 = net.graph();
  const std::size_t n = g0.num_vertices();
  TriangleResult res;
  std::map<Triangle, Vertex> found;
  const double lg = std::max(1.0, std::log2(static_cast<double>(std::max<std::size_t>(n, 2))));
  const double q_factor = cfg.router.c_r * std::pow(lg, cfg.router.c_q);
  std::vector<Edge> level_edges(g0.edges().begin(), g0.edges().end());
  DecompConfig dcfg = cfg.decomp;
  dcfg.verify = false;
  dcfg.network = net.config();
  while (!level_edges.empty()) {
    if (res.levels >= cfg.max_levels) throw DepthExceeded("triangle recursion exceeded the level cap");
    const std::uint32_t level = res.levels++;
    res.level_edges.push_back(level_edges.size());
    Graph g(n, level_edges);
    Network lnet(g, net.config());
    const Decomposition d =
        expander_decomposition(lnet, epsilon, k, derive_seed(seed, {tag(Stream::kTriangles), level}), dcfg);
    res.level_budget_ok.push_back(d.budget_ok);
    net.ledger().append(d.ledger);
    std::vector<std::vector<Vertex>> comps = d.components;
    std::vector<std::uint32_t> label(n, 0);
    for (std::uint32_t i = 0; i < comps.size(); ++i)
      for (Vertex v : comps[i]) label[v] = i;
    std::vector<Edge> next;
    for (const Edge& e : g.edges())
      if (label[e.u] != label[e.v]) next.push_back(e);
    if (next.size() == level_edges.size()) {
      // no intra-component edge at all: enumerate the level graph as one part
      ++res.fallback_levels;
      comps.assign(1, {});
      for (Vertex v = 0; v < n; ++v) comps[0].push_back(v);
      std::fill(label.begin(), label.end(), 0);
      next.clear();
    }
    RoundLedger::Scope scope(net.ledger(), "triangle_router");
    for (const auto& c : comps) {
      if (c.size() < 2) continue;
      const ComponentEnumeration ce = enumerate_component(g, c, label);
      for (std::size_t i = 0; i < ce.triangles.size(); ++i) found.emplace(ce.triangles[i], ce.reporters[i]);
      RouterEntry entry;
      entry.level = level;
      entry.size = c.size();
      const Subgraph sub = contract(g, c);
      entry.tau_mix = sub.graph.num_edges() ? mixing_time_estimate(sub.graph, cfg.router.mix_tol) : 0;
      entry.batches = ce.batches;
      entry.rounds = static_cast<double>(ce.batches) * q_factor * static_cast<double>(entry.tau_mix);
      res.rounds_charged += entry.rounds;
      net.charge(static_cast<std::uint64_t>(std::ceil(entry.rounds)), ce.delivered, 2ull * net.id_bits());
      res.router.push_back(entry);
    }
    level_edges = std::move(next);
  }
  for (const auto& [t, v] : found) {
    res.triangles.push_back(t);
    res.reporters.push_back(v);
  }
  return res;
}

std::vector<RouterLevelSummary> router_cost_report(const TriangleResult& r) {
  std::vector<RouterLevelSummary> out(r.levels);
  for (std::uint32_t i = 0; i < r.levels; ++i) out[i].level = i;
  for (const auto& e : r.router) {
    auto& s = out[e.level];
    ++s.components;
    s.tau_mix_max = std::max(s.tau_mix_max, e.tau_mix);
    s.batches += e.batches;
    s.rounds += e.rounds;
  }
  return out;
}

}  // namespace expdecomp
