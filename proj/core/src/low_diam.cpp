#include "expdecomp/low_diam.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace expdecomp {

namespace {

double lg(std::size_t n) { return std::max(1.0, std::log2(static_cast<double>(n))); }

bool in_mask(const EdgeMask& m, EdgeId e) { return m.empty() || m[e]; }

/// Multi-source BFS distances, capped at limit (farther vertices stay kUnreached).
std::vector<std::uint32_t> distances_from(const Graph& g, std::span<const Vertex> sources, std::uint32_t limit,
                                          const std::vector<char>* allowed = nullptr) {
  std::vector<std::uint32_t> dist(g.num_vertices(), kUnreached);
  std::deque<Vertex> q;
  for (Vertex s : sources) {
    if (dist[s] == kUnreached) {
      dist[s] = 0;
      q.push_back(s);
    }
  }
  while (!q.empty()) {
    const Vertex u = q.front();
    q.pop_front();
    if (dist[u] >= limit) continue;
    for (Vertex w : g.neighbors(u)) {
      if (dist[w] != kUnreached || (allowed && !(*allowed)[w])) continue;
      dist[w] = dist[u] + 1;
      q.push_back(w);
    }
  }
  return dist;
}

/// Rounds of a global OR over a BFS forest rooted at component minima (up and down).
void charge_global_or(Network& net) {
  const Graph& g = net.graph();
  const auto comps = connected_components(g);
  std::uint64_t height = 0;
  for (const auto& grp : comps.groups()) {
    const auto d = distances_from(g, std::span<const Vertex>(&grp.front(), 1), kUnreached);
    for (Vertex v : grp) height = std::max<std::uint64_t>(height, d[v]);
  }
  const std::uint64_t tree_edges = g.num_vertices() - comps.count;
  net.charge(2 * std::max<std::uint64_t>(1, height), 2 * tree_edges, 1);
}

std::uint64_t list_bits(const Network& net, std::size_t size) {
  return std::max<std::uint64_t>(1, 2ull * net.id_bits() * size);
}

std::uint64_t frames_of(const Network& net, std::uint64_t bits) {
  const std::uint64_t bw = net.bandwidth_bits();
  return std::max<std::uint64_t>(1, (bits + bw - 1) / bw);
}

/// Message-level flooding of E* lists; a vertex switches to a 1-bit star once over tau.
std::vector<std::optional<std::vector<EdgeId>>> flood_simulated(Network& net, const EdgeMask& estar, std::uint32_t d,
                                                                double tau) {
  const Graph& g = net.graph();
  const std::size_t n = g.num_vertices();
  std::vector<std::optional<std::vector<EdgeId>>> state(n);
  std::vector<char> changed(n, 1);
  for (Vertex v = 0; v < n; ++v) {
    std::vector<EdgeId> own;
    for (EdgeId e : g.incident_edges(v))
      if (in_mask(estar, e)) own.push_back(e);
    std::sort(own.begin(), own.end());
    if (static_cast<double>(own.size()) <= tau) state[v] = std::move(own);
  }
  for (std::uint32_t phase = 1; phase < d; ++phase) {
    if (std::none_of(changed.begin(), changed.end(), [](char c) { return c != 0; })) {
      net.charge(d - phase, 0, 0);
      break;
    }
    net.clear_inboxes();
    net.run_framed_round([&](Vertex v, std::span<const Incoming>, Outbox& out) {
      if (!changed[v]) return;
      Message m;
      m.kind = 20;
      if (!state[v]) {
        m.bits = 1;
        m.w[0] = 1;
      } else {
        m.bits = static_cast<std::uint32_t>(list_bits(net, state[v]->size()));
        m.bulk = std::make_shared<const std::vector<std::uint64_t>>(state[v]->begin(), state[v]->end());
      }
      for (Vertex w : g.neighbors(v)) out.send(w, m);
    });
    for (Vertex v = 0; v < n; ++v) {
      changed[v] = 0;
      if (!state[v]) continue;
      const auto in = net.inbox(v);
      if (in.empty()) continue;
      std::vector<EdgeId> merged = *state[v];
      bool star = false;
      for (const auto& msg : in) {
        if (msg.msg.w[0] == 1) {
          star = true;
          break;
        }
        merged.insert(merged.end(), msg.msg.bulk->begin(), msg.msg.bulk->end());
      }
      if (!star) {
        std::sort(merged.begin(), merged.end());
        merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
      }
      if (star || static_cast<double>(merged.size()) > tau) {
        state[v].reset();
        changed[v] = 1;
      } else if (merged.size() != state[v]->size()) {
        state[v] = std::move(merged);
        changed[v] = 1;
      }
    }
    net.clear_inboxes();
  }
  return state;
}

/// Central counterpart: per vertex the layer counts |E(N^i(v)) ∩ E*|, i = 1..d, with identical charges.
struct LayerCounts {
  std::vector<std::vector<std::uint64_t>> count;  ///< count[v][i-1]; stops growing once over tau
  std::vector<std::optional<std::vector<EdgeId>>> lists;
};

LayerCounts flood_central(Network& net, const EdgeMask& estar, std::uint32_t d, double tau, bool want_lists) {
  const Graph& g = net.graph();
  const std::size_t n = g.num_vertices();
  LayerCounts out;
  out.count.assign(n, {});
  if (want_lists) out.lists.assign(n, std::nullopt);
  std::vector<std::uint32_t> dist(n, kUnreached);
  std::vector<Vertex> seen;
  std::vector<char> edge_seen(g.num_edges(), 0);
  std::vector<EdgeId> edges;
  for (Vertex v = 0; v < n; ++v) {
    seen.clear();
    edges.clear();
    std::vector<Vertex> layer{v};
    dist[v] = 0;
    seen.push_back(v);
    std::uint64_t c = 0;
    auto& cv = out.count[v];
    for (std::uint32_t i = 1; i <= d; ++i) {
      // E(N^i(v)) adds the E* edges of the vertices at distance i-1.
      for (Vertex u : layer)
        for (EdgeId e : g.incident_edges(u))
          if (in_mask(estar, e) && !edge_seen[e]) {
            edge_seen[e] = 1;
            edges.push_back(e);
            ++c;
          }
      cv.push_back(c);
      if (static_cast<double>(c) > tau) break;
      if (i == d) break;
      std::vector<Vertex> next;
      for (Vertex u : layer)
        for (Vertex w : g.neighbors(u))
          if (dist[w] == kUnreached) {
            dist[w] = i;
            seen.push_back(w);
            next.push_back(w);
          }
      if (next.empty()) break;  // stable from here on
      layer = std::move(next);
    }
    if (want_lists && static_cast<double>(c) <= tau) {
      std::vector<EdgeId> l = edges;
      std::sort(l.begin(), l.end());
      out.lists[v] = std::move(l);
    }
    for (Vertex u : seen) dist[u] = kUnreached;
    for (EdgeId e : edges) edge_seen[e] = 0;
  }
  // State at level i: count if <= tau, else over. A vertex sends in phase i iff its level-i state
  // differs from level i-1 (every vertex sends in phase 1).
  auto state = [&](Vertex v, std::uint32_t i) -> std::uint64_t {
    const auto& cv = out.count[v];
    const std::uint64_t c = cv[std::min<std::size_t>(i, cv.size()) - 1];
    return static_cast<double>(c) > tau ? std::numeric_limits<std::uint64_t>::max() : c;
  };
  for (std::uint32_t phase = 1; phase < d; ++phase) {
    std::uint64_t frames_max = 0;
    std::uint64_t messages = 0;
    std::uint64_t max_bits = 0;
    bool any = false;
    for (Vertex v = 0; v < n; ++v) {
      const std::uint64_t s = state(v, phase);
      if (phase > 1 && s == state(v, phase - 1)) continue;
      any = true;
      const auto deg = g.simple_degree(v);
      if (deg == 0) continue;
      const std::uint64_t bits = s == std::numeric_limits<std::uint64_t>::max() ? 1 : list_bits(net, s);
      const std::uint64_t fr = frames_of(net, bits);
      frames_max = std::max(frames_max, fr);
      messages += fr * deg;
      max_bits = std::max(max_bits, std::min(bits, net.bandwidth_bits()));
    }
    if (!any) {
      net.charge(d - phase, 0, 0);
      break;
    }
    net.charge(std::max<std::uint64_t>(1, frames_max), messages, max_bits);
  }
  return out;
}

EdgeMask sample_edges(const Graph& g, double q, std::uint64_t seed, std::uint64_t key) {
  EdgeMask mask(g.num_edges(), 0);
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    Rng rng = make_rng(seed, {tag(Stream::kThresholdSample), key, e});
    mask[e] = uniform01(rng) < q ? 1 : 0;
  }
  return mask;
}

/// Counts (nullopt = over tau) in either mode.
std::vector<std::optional<std::uint64_t>> bounded_counts(Network& net, const EdgeMask& estar, std::uint32_t d,
                                                         double tau) {
  const std::size_t n = net.size();
  std::vector<std::optional<std::uint64_t>> res(n);
  if (net.simulated()) {
    const auto st = flood_simulated(net, estar, d, tau);
    for (Vertex v = 0; v < n; ++v)
      if (st[v]) res[v] = st[v]->size();
    return res;
  }
  const auto lc = flood_central(net, estar, d, tau, false);
  for (Vertex v = 0; v < n; ++v) {
    const std::uint64_t c = lc.count[v].back();
    if (static_cast<double>(c) <= tau) res[v] = c;
  }
  return res;
}

std::uint64_t pairs(std::size_t n) { return static_cast<std::uint64_t>(n) * (n - (n > 0 ? 1 : 0)) / 2; }

}  // namespace

// ---------------------------------------------------------------------------
// Clustering

std::uint32_t clustering_epochs(std::size_t n, double beta) {
  return static_cast<std::uint32_t>(std::ceil(2.0 * lg(n) / beta));
}

Clustering exp_shift_clustering(Network& net, double beta, std::uint64_t seed, const std::vector<double>* forced) {
  const Graph& g = net.graph();
  const std::size_t n = g.num_vertices();
  if (!(beta > 0.0) || beta >= 1.0) throw std::invalid_argument("beta must lie in (0, 1)");
  const std::uint32_t T = clustering_epochs(n, beta);
  std::vector<std::uint32_t> start(n);
  for (Vertex v = 0; v < n; ++v) {
    double delta;
    if (forced) {
      delta = forced->at(v);
    } else {
      Rng rng = make_rng(seed, {tag(Stream::kClusteringShift), v});
      delta = -std::log1p(-uniform01(rng)) / beta;
    }
    const double fl = std::floor(delta);
    start[v] = fl >= T ? 1u : std::max<std::uint32_t>(1, T - static_cast<std::uint32_t>(fl));
  }
  Clustering c;
  c.epochs = T;
  c.cluster.assign(n, kUnreached);
  c.parent.assign(n, kUnreached);
  const std::uint64_t label_bits = net.id_bits();

  if (net.simulated()) {
    net.clear_inboxes();
    for (std::uint32_t t = 1; t <= T; ++t) {
      net.run_round([&](Vertex v, std::span<const Incoming> in, Outbox& out) {
        if (c.cluster[v] != kUnreached) return;
        if (start[v] == t) {
          c.cluster[v] = v;
          c.parent[v] = v;
        } else if (start[v] > t && !in.empty()) {
          const Incoming* best = &in[0];
          for (const auto& m : in)
            if (m.msg.w[0] < best->msg.w[0] || (m.msg.w[0] == best->msg.w[0] && m.from < best->from)) best = &m;
          c.cluster[v] = static_cast<Vertex>(best->msg.w[0]);
          c.parent[v] = best->from;
        } else {
          return;
        }
        for (Vertex w : g.neighbors(v)) out.send(w, Message{30, static_cast<std::uint32_t>(label_bits), {c.cluster[v], 0, 0}, nullptr});
      });
    }
    net.clear_inboxes();
  } else {
    // Event-driven replay of the same protocol.
    std::vector<std::vector<Vertex>> starters(T + 2);
    for (Vertex v = 0; v < n; ++v) starters[start[v]].push_back(v);
    std::vector<Vertex> fresh;
    std::uint64_t messages = 0;
    std::uint64_t active_rounds = 0;
    for (std::uint32_t t = 1; t <= T; ++t) {
      std::vector<Vertex> now;
      for (Vertex v : starters[t])
        if (c.cluster[v] == kUnreached) {
          c.cluster[v] = v;
          c.parent[v] = v;
          now.push_back(v);
        }
      std::vector<std::pair<Vertex, Vertex>> joins;  // (vertex, announcer)
      for (Vertex u : fresh)
        for (Vertex w : g.neighbors(u)) {
          if (c.cluster[w] != kUnreached || start[w] <= t) continue;
          joins.emplace_back(w, u);
        }
      std::sort(joins.begin(), joins.end(), [&](const auto& x, const auto& y) {
        if (x.first != y.first) return x.first < y.first;
        if (c.cluster[x.second] != c.cluster[y.second]) return c.cluster[x.second] < c.cluster[y.second];
        return x.second < y.second;
      });
      for (std::size_t i = 0; i < joins.size(); ++i) {
        if (i > 0 && joins[i].first == joins[i - 1].first) continue;
        const Vertex w = joins[i].first;
        if (c.cluster[w] != kUnreached) continue;
        c.cluster[w] = c.cluster[joins[i].second];
        c.parent[w] = joins[i].second;
        now.push_back(w);
      }
      if (!now.empty()) ++active_rounds;
      for (Vertex v : now) messages += g.simple_degree(v);
      fresh = std::move(now);
      // Skip empty epochs straight to the next start.
      if (fresh.empty()) {
        std::uint32_t next = t + 1;
        while (next <= T && starters[next].empty()) ++next;
        t = next - 1;
      }
    }
    net.charge(T, messages, messages > 0 ? label_bits : 0);
  }
  for (Vertex v = 0; v < n; ++v)
    if (c.cluster[v] == v) c.centers.push_back(v);
  return c;
}

std::vector<EdgeId> Clustering::inter_cluster_edges(const Graph& g) const {
  std::vector<EdgeId> out;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const auto& ed = g.edge(e);
    if (cluster[ed.u] != cluster[ed.v]) out.push_back(e);
  }
  return out;
}

std::vector<std::vector<Vertex>> Clustering::groups() const {
  std::vector<std::vector<Vertex>> out;
  std::vector<std::size_t> index(cluster.size(), kUnreached);
  for (std::size_t i = 0; i < centers.size(); ++i) index[centers[i]] = i;
  out.resize(centers.size());
  for (Vertex v = 0; v < cluster.size(); ++v) out[index[cluster[v]]].push_back(v);
  return out;
}

std::uint32_t Clustering::cluster_diameter(const Graph& g, Vertex center) const {
  std::vector<Vertex> members;
  for (Vertex v = 0; v < cluster.size(); ++v)
    if (cluster[v] == center) members.push_back(v);
  return diameter(induced(g, members).graph);
}

std::uint32_t Clustering::max_diameter(const Graph& g) const {
  std::uint32_t best = 0;
  for (Vertex c : centers) best = std::max(best, cluster_diameter(g, c));
  return best;
}

// ---------------------------------------------------------------------------
// Neighborhood counting

std::vector<std::optional<std::vector<EdgeId>>> neighborhood_edges_exact(Network& net, const EdgeMask& estar,
                                                                         std::uint32_t d, double tau) {
  if (d == 0) throw std::invalid_argument("d must be positive");
  if (net.simulated()) return flood_simulated(net, estar, d, tau);
  return flood_central(net, estar, d, tau, true).lists;
}

std::vector<char> neighborhood_threshold_test(Network& net, std::uint32_t d, double z, double f, std::uint64_t seed,
                                              const ThresholdConfig& cfg) {
  const Graph& g = net.graph();
  const std::size_t n = g.num_vertices();
  const double klog = cfg.K * lg(n);
  std::vector<char> out(n, 0);
  if (klog >= f * f * z) {
    const auto cnt = bounded_counts(net, {}, d, (1.0 + f) * z);
    for (Vertex v = 0; v < n; ++v) out[v] = cnt[v] && static_cast<double>(*cnt[v]) <= z ? 1 : 0;
    return out;
  }
  const double q = klog / (f * f * z);
  const EdgeMask estar = sample_edges(g, q, seed, cfg.sample_key);
  const auto cnt = bounded_counts(net, estar, d, (1.0 + f / 2.0) * klog / (f * f));
  for (Vertex v = 0; v < n; ++v) out[v] = cnt[v] ? 1 : 0;
  return out;
}

SizeEstimate neighborhood_size_estimate(Network& net, std::uint32_t d, double f, std::uint64_t seed, double K) {
  const std::size_t n = net.size();
  SizeEstimate est;
  est.m.assign(n, 0.0);
  const double top = std::max<double>(1.0, static_cast<double>(pairs(n)));
  std::size_t left = n;
  double s = 1.0;
  for (std::uint32_t i = 1; left > 0; ++i) {
    ThresholdConfig cfg{K, i};
    const auto res = neighborhood_threshold_test(net, d, s, f, seed, cfg);
    ++est.steps;
    const bool last = s >= top;
    for (Vertex v = 0; v < n; ++v) {
      if (est.m[v] == 0.0 && (res[v] || last)) {
        est.m[v] = s;
        --left;
      }
    }
    if (last) break;
    charge_global_or(net);
    s *= 1.0 + f;
  }
  return est;
}

// ---------------------------------------------------------------------------
// Dense/sparse split

std::vector<std::vector<Vertex>> DenseSparseSplit::dense_components(const Graph& g) const {
  std::vector<std::vector<Vertex>> out;
  const auto comps = connected_components_if(g, [&](EdgeId e) {
    const auto& ed = g.edge(e);
    return dense[ed.u] && dense[ed.v];
  });
  for (auto& grp : comps.groups())
    if (dense[grp.front()]) out.push_back(std::move(grp));
  return out;
}

DenseSparseSplit build_dense_sparse_split(Network& net, double beta, double K, double f, std::uint64_t seed) {
  if (!(beta > 0.0) || beta >= 1.0) throw std::invalid_argument("beta must lie in (0, 1)");
  if (!(f > 0.0) || std::pow(1.0 + f, 4) > 2.0) throw std::invalid_argument("f must satisfy (1+f)^4 <= 2");
  const Graph& g = net.graph();
  const std::size_t n = g.num_vertices();
  DenseSparseSplit sp;
  sp.beta = beta;
  sp.K = K;
  sp.f = f;
  sp.a = static_cast<std::uint32_t>(std::ceil(5.0 * lg(n) / beta));
  sp.b = K * lg(n) / beta;
  const auto cap = static_cast<std::uint32_t>(std::max<std::size_t>(1, n));
  sp.radius_a = std::min(sp.a, cap);
  const double big = 100.0 * sp.a * sp.b;
  sp.radius_big = big >= cap ? cap : std::max<std::uint32_t>(1, static_cast<std::uint32_t>(std::ceil(big)));
  {
    RoundLedger::Scope scope(net.ledger(), "lowdiam_estimate");
    sp.est_a = neighborhood_size_estimate(net, sp.radius_a, f, derive_seed(seed, {1}), K).m;
    sp.est_big = sp.radius_big == sp.radius_a ? sp.est_a
                                              : neighborhood_size_estimate(net, sp.radius_big, f, derive_seed(seed, {2}), K).m;
  }
  sp.dense_aux.assign(n, 0);
  std::vector<Vertex> aux;
  const double slack = (1.0 + f) * (1.0 + f);
  for (Vertex v = 0; v < n; ++v) {
    if (sp.est_a[v] * 2.0 * sp.b >= slack * sp.est_big[v]) {
      sp.dense_aux[v] = 1;
      aux.push_back(v);
    }
  }

  RoundLedger::Scope scope(net.ledger(), "lowdiam_split");
  const std::uint64_t two_m = 2 * g.num_edges();
  // W_0 = N^a(V_D'): a rounds of flooding.
  std::vector<char> w(n, 0);
  {
    const auto dist = distances_from(g, aux, sp.radius_a);
    for (Vertex v = 0; v < n; ++v) w[v] = dist[v] != kUnreached ? 1 : 0;
    net.charge(sp.radius_a, two_m * sp.radius_a, net.id_bits());
  }
  sp.history.push_back(w);
  for (;;) {
    const auto comps = connected_components_if(g, [&](EdgeId e) {
      const auto& ed = g.edge(e);
      return w[ed.u] && w[ed.v];
    });
    std::vector<std::vector<Vertex>> groups;
    std::uint32_t label_rounds = 1;
    for (auto& grp : comps.groups()) {
      if (!w[grp.front()]) continue;
      label_rounds = std::max<std::uint32_t>(label_rounds, diameter(induced(g, grp).graph) + 1);
      groups.push_back(std::move(grp));
    }
    // Component labels, then a radius-a probe for other components, then the expansion.
    net.charge(label_rounds, two_m * label_rounds, net.id_bits());
    net.charge(sp.radius_a, two_m * sp.radius_a, net.id_bits());
    std::vector<char> next = w;
    bool grew = false;
    for (const auto& grp : groups) {
      const auto dist = distances_from(g, grp, sp.radius_a);
      bool close = false;
      for (Vertex v = 0; v < n && !close; ++v)
        close = dist[v] != kUnreached && w[v] && comps.label[v] != comps.label[grp.front()];
      if (!close) continue;
      for (Vertex v = 0; v < n; ++v)
        if (dist[v] != kUnreached && !next[v]) {
          next[v] = 1;
          grew = true;
        }
    }
    net.charge(sp.radius_a, two_m * sp.radius_a, net.id_bits());
    charge_global_or(net);
    if (!grew) break;
    w = std::move(next);
    ++sp.iterations;
    sp.history.push_back(w);
  }
  sp.dense = w;
  return sp;
}

std::size_t max_separated_subset(const Graph& g, std::span<const Vertex> candidates, std::uint32_t gap) {
  const std::size_t k = candidates.size();
  if (k == 0) return 0;
  std::vector<std::vector<char>> conflict(k, std::vector<char>(k, 0));
  for (std::size_t i = 0; i < k; ++i) {
    const auto d = distances_from(g, candidates.subspan(i, 1), gap);
    for (std::size_t j = 0; j < k; ++j)
      if (j != i && d[candidates[j]] != kUnreached) conflict[i][j] = 1;
  }
  std::size_t best = 0;
  std::vector<std::size_t> all(k);
  std::iota(all.begin(), all.end(), 0);
  auto rec = [&](auto&& self, std::vector<std::size_t> cand, std::size_t chosen) -> void {
    // Vertices without conflicts inside cand are always taken.
    for (;;) {
      bool took = false;
      for (std::size_t i = 0; i < cand.size(); ++i) {
        std::size_t deg = 0;
        for (std::size_t j : cand) deg += conflict[cand[i]][j];
        if (deg <= 1) {
          const std::size_t x = cand[i];
          std::vector<std::size_t> rest;
          for (std::size_t j : cand)
            if (j != x && !conflict[x][j]) rest.push_back(j);
          cand = std::move(rest);
          ++chosen;
          took = true;
          break;
        }
      }
      if (!took) break;
    }
    if (chosen + cand.size() <= best) return;
    if (cand.empty()) {
      best = std::max(best, chosen);
      return;
    }
    std::size_t pick = cand[0];
    std::size_t pick_deg = 0;
    for (std::size_t i : cand) {
      std::size_t deg = 0;
      for (std::size_t j : cand) deg += conflict[i][j];
      if (deg > pick_deg) {
        pick_deg = deg;
        pick = i;
      }
    }
    std::vector<std::size_t> with;
    for (std::size_t j : cand)
      if (j != pick && !conflict[pick][j]) with.push_back(j);
    self(self, std::move(with), chosen + 1);
    std::vector<std::size_t> without;
    for (std::size_t j : cand)
      if (j != pick) without.push_back(j);
    self(self, std::move(without), chosen);
  };
  rec(rec, all, 0);
  return best;
}

HReport check_invariant_h(const Graph& g, const DenseSparseSplit& split, std::span<const Vertex> s) {
  HReport r;
  const std::size_t n = g.num_vertices();
  const auto in_s = make_mask(n, s);
  // H(1): every u in V_D' has N^a(u) inside S or disjoint from it.
  r.h1 = true;
  for (Vertex u = 0; u < n && r.h1; ++u) {
    if (!split.dense_aux[u]) continue;
    const auto d = distances_from(g, std::span<const Vertex>(&u, 1), split.radius_a);
    bool inside = false;
    bool outside = false;
    for (Vertex v = 0; v < n; ++v) {
      if (d[v] == kUnreached) continue;
      (in_s[v] ? inside : outside) = true;
    }
    r.h1 = !(inside && outside);
  }
  std::vector<Vertex> cand;
  for (Vertex v : s)
    if (split.dense_aux[v]) cand.push_back(v);
  r.n_s = max_separated_subset(g, cand, 2 * split.a);
  r.d_s = diameter(induced(g, s).graph);
  const double a = split.a;
  r.h2 = r.d_s != kUnreached && static_cast<double>(r.d_s) <= 10.0 * a * static_cast<double>(r.n_s) - (4.0 * a + 1.0);
  r.h3 = static_cast<double>(r.n_s) <= 2.0 * split.b;
  return r;
}

// ---------------------------------------------------------------------------

LowDiamResult low_diam_decomposition(Network& net, double beta, double K, std::uint64_t seed, double f) {
  const Graph& g = net.graph();
  LowDiamResult r;
  const double b3 = beta / 3.0;
  r.split = build_dense_sparse_split(net, b3, K, f, derive_seed(seed, {tag(Stream::kThresholdSample)}));
  {
    RoundLedger::Scope scope(net.ledger(), "lowdiam_cluster");
    r.clustering = exp_shift_clustering(net, b3, derive_seed(seed, {tag(Stream::kClusteringShift)}));
  }
  std::vector<char> cut(g.num_edges(), 0);
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const auto& ed = g.edge(e);
    if (r.clustering.cluster[ed.u] == r.clustering.cluster[ed.v]) continue;
    if (!r.split.dense[ed.u] || !r.split.dense[ed.v]) {
      cut[e] = 1;
      r.cut_edges.push_back(e);
    }
  }
  r.components = connected_components_if(g, [&](EdgeId e) { return !cut[e]; });
  for (const auto& grp : r.components.groups())
    r.max_diameter = std::max(r.max_diameter, diameter(induced(g, grp).graph));
  return r;
}

}  // namespace expdecomp
