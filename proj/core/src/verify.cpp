#include "expdecomp/verify.hpp"

#include <algorithm>
#include <numeric>

#include "expdecomp/walks.hpp"

namespace expdecomp {

const char* method_name(ComponentCheck::Method m) {
  switch (m) {
    case ComponentCheck::Method::kSingleton:
      return "singleton";
    case ComponentCheck::Method::kOracle:
      return "oracle";
    case ComponentCheck::Method::kFalsifier:
      return "falsifier";
  }
  return "?";
}

double sweep_falsifier(const Graph& g, std::size_t steps, std::size_t starts) {
  const std::size_t n = g.num_vertices();
  const std::uint64_t total = g.total_volume();
  double best = 1.0;
  if (n < 2 || total == 0) return best;
  std::vector<Vertex> order(n);
  std::vector<char> mark(n, 0);
  const std::size_t count = starts == 0 ? n : std::min(starts, n);
  for (std::size_t si = 0; si < count; ++si) {
    const Vertex s = static_cast<Vertex>(starts == 0 ? si : si * n / count);
    if (g.degree(s) == 0) continue;
    Distribution p = indicator(n, s);
    for (std::size_t t = 1; t <= steps; ++t) {
      p = lazy_step(g, p);
      std::iota(order.begin(), order.end(), Vertex{0});
      std::sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
        const double ra = g.degree(a) ? p[a] / static_cast<double>(g.degree(a)) : 0.0;
        const double rb = g.degree(b) ? p[b] / static_cast<double>(g.degree(b)) : 0.0;
        return ra != rb ? ra > rb : a < b;
      });
      std::uint64_t vol = 0;
      std::int64_t boundary = 0;
      for (std::size_t j = 0; j + 1 < n; ++j) {
        const Vertex x = order[j];
        std::int64_t inside = 0;
        for (Vertex y : g.neighbors(x)) inside += mark[y];
        boundary += static_cast<std::int64_t>(g.simple_degree(x)) - 2 * inside;
        mark[x] = 1;
        vol += g.degree(x);
        if (vol == 0 || vol == total) continue;
        best = std::min(best, conductance_value(static_cast<std::uint64_t>(boundary), vol, total));
      }
      for (Vertex x : order) mark[x] = 0;
    }
  }
  return best;
}

ComponentCheck check_component(const Graph& g, std::vector<Vertex> members, double phi, const VerifyOptions& opt) {
  ComponentCheck c;
  std::sort(members.begin(), members.end());
  c.members = std::move(members);
  if (c.members.size() <= 1) return c;
  const Graph sub = contract(g, c.members).graph;
  if (c.members.size() <= opt.oracle_max) {
    c.method = ComponentCheck::Method::kOracle;
    const auto w = min_conductance_oracle(sub, opt.oracle_max);
    c.phi_exact = w.phi;
    c.pass = static_cast<long double>(w.phi.num()) >= static_cast<long double>(phi) * static_cast<long double>(w.phi.den());
    return c;
  }
  c.method = ComponentCheck::Method::kFalsifier;
  const std::size_t steps = opt.falsifier_steps ? opt.falsifier_steps : 4 * c.members.size() + 16;
  c.best_sweep = sweep_falsifier(sub, steps, opt.falsifier_starts);
  c.pass = !(c.best_sweep < phi);
  return c;
}

VerifyReport verify_decomposition(const Graph& g, const std::vector<std::vector<Vertex>>& components, double epsilon,
                                  double phi, const VerifyOptions& opt) {
  VerifyReport r;
  const std::size_t n = g.num_vertices();
  std::vector<std::uint32_t> label(n, kUnreached);
  bool ok = true;
  for (std::size_t i = 0; i < components.size(); ++i) {
    for (Vertex v : components[i]) {
      if (v >= n || label[v] != kUnreached) {
        ok = false;
        continue;
      }
      label[v] = static_cast<std::uint32_t>(i);
    }
  }
  for (Vertex v = 0; v < n; ++v) ok = ok && label[v] != kUnreached;
  r.partition_ok = ok;
  for (const Edge& e : g.edges()) {
    if (label[e.u] != label[e.v] || label[e.u] == kUnreached) ++r.inter_edges;
  }
  r.inter_fraction = g.num_edges() ? static_cast<double>(r.inter_edges) / static_cast<double>(g.num_edges()) : 0.0;
  r.fraction_ok = static_cast<double>(r.inter_edges) <= epsilon * static_cast<double>(g.num_edges());
  bool all = true;
  if (ok) {
    for (const auto& comp : components) {
      r.components.push_back(check_component(g, comp, phi, opt));
      all = all && r.components.back().pass;
    }
  }
  r.pass = r.partition_ok && r.fraction_ok && all;
  return r;
}

bool verify_triangles(const Graph& g, const std::vector<Triangle>& triangles) {
  std::vector<Triangle> sorted = triangles;
  for (const Triangle& t : sorted) {
    if (!(t[0] < t[1] && t[1] < t[2]) || t[2] >= g.num_vertices()) return false;
    if (!g.has_edge(t[0], t[1]) || !g.has_edge(t[1], t[2]) || !g.has_edge(t[0], t[2])) return false;
  }
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

}  // namespace expdecomp
