#include "expdecomp/expander_decomp.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include <nlohmann/json.hpp>

#include "expdecomp/low_diam.hpp"

namespace expdecomp {

namespace {

double binom2(std::size_t n) { return static_cast<double>(n) * (static_cast<double>(n) - 1.0) / 2.0; }

}  // namespace

DecompParams derive_decomp_params(std::size_t n, std::uint64_t m, double epsilon, std::uint32_t k, double c_h) {
  if (!(epsilon > 0.0) || epsilon >= 1.0) throw BadEpsilon("epsilon must lie in (0, 1)");
  if (k < 1) throw BadEpsilon("k must be at least 1");
  DecompParams p;
  p.epsilon = epsilon;
  p.k = k;
  p.n = n;
  p.m = m;
  p.c_h = c_h;
  const double pairs2 = 2.0 * binom2(std::max<std::size_t>(n, 2));
  // smallest d with (1 - eps/12)^d * 2 C(n,2) < 1
  const double q = 1.0 - epsilon / 12.0;
  std::uint64_t d = static_cast<std::uint64_t>(std::max(0.0, std::floor(std::log(pairs2) / -std::log(q))));
  while (d > 0 && std::pow(q, static_cast<double>(d - 1)) * pairs2 < 1.0) --d;
  while (!(std::pow(q, static_cast<double>(d)) * pairs2 < 1.0)) ++d;
  p.d = std::max<std::uint64_t>(1, d);
  p.beta = (epsilon / 3.0) / static_cast<double>(p.d);

  // h(x) = c_h x^{1/3} L with L = (log2 n)^{5/3}; h^{-1}(x) = (x / (c_h L))^3, tracked in log2.
  const double lg = std::max(1.0, std::log2(static_cast<double>(std::max<std::size_t>(n, 2))));
  const double log2_cl = std::log2(c_h) + (5.0 / 3.0) * std::log2(lg);
  const double h0 = (epsilon / 6.0) / std::max(1.0, std::log2(binom2(std::max<std::size_t>(n, 2))));
  double l = 3.0 * (std::log2(h0) - log2_cl);
  for (std::uint32_t i = 0; i <= k; ++i) {
    p.log2_phi.push_back(l);
    p.phi.push_back(std::exp2(l));
    l = 3.0 * (l - log2_cl);
  }
  for (std::size_t i = 1; i < p.log2_phi.size(); ++i) {
    if (!(p.log2_phi[i] < p.log2_phi[i - 1])) throw BadEpsilon("phi ladder is not decreasing (c_h too small)");
  }
  return p;
}

double Decomposition::removed_fraction() const {
  return edges ? static_cast<double>(removed.size()) / static_cast<double>(edges) : 0.0;
}

bool partition_bounds_hold(const Graph& g, const PartitionResult& r, double k_phi) {
  if (48 * r.vol_c > 47 * r.vol_total) return false;
  std::vector<char> seen(g.num_vertices(), 0);
  for (const auto& piece : r.pieces) {
    for (Vertex v : piece) {
      if (seen[v]) return false;
      seen[v] = 1;
    }
  }
  if (r.members.empty()) return true;
  const double lg = std::log2(static_cast<double>(std::max<std::size_t>(g.num_vertices(), 2)));
  const double phi_c = conductance_value(r.boundary, r.vol_c, r.vol_total);
  return phi_c <= k_phi * r.phi * lg;
}

namespace {

class Decomposer {
 public:
  Decomposer(const Graph& g, const DecompParams& p, const DecompConfig& cfg, std::uint64_t seed, Decomposition& out)
      : orig_(g), cur_(g), p_(p), cfg_(cfg), seed_(seed), out_(out) {}

  RoundLedger run() {
    std::vector<Vertex> all(orig_.num_vertices());
    for (Vertex v = 0; v < all.size(); ++v) all[v] = v;
    RoundLedger ledger;
    {
      RoundLedger l1 = phase1_node(all, 0);
      ledger.append(l1);
    }
    std::vector<RoundLedger> parts;
    for (const auto& u : queue_) parts.push_back(phase2(u));
    ledger.append_parallel(parts);
    return ledger;
  }

  const Graph& current() const { return cur_; }

 private:
  void remove(std::span<const Edge> edges, Channel ch) {
    if (edges.empty()) return;
    for (const Edge& e : edges) {
      out_.removed.push_back({e, ch});
      ++out_.removed_by_channel[static_cast<int>(ch) - 1];
    }
    cur_ = cur_.remove_edges_to_loops(edges);
  }

  SparseCutResult cut(Network& net, const Graph& walk, double phi, std::uint64_t seed) {
    SparseCutResult r = nearly_balanced_sparse_cut(net, walk, phi, cfg_.cut, seed);
    auto& st = out_.stats;
    ++st.sparse_cut_calls;
    if (r.partition.max_overlap_nonempty > 0) {
      st.partition_overlap_max = std::max(st.partition_overlap_max, r.partition.max_overlap_nonempty);
      st.partition_w_min = st.partition_w_min ? std::min(st.partition_w_min, r.partition.w_max) : r.partition.w_max;
      if (r.partition.max_overlap_nonempty > r.partition.w_max) st.overlap_ok = false;
    }
    if (!partition_bounds_hold(walk, r.partition, cfg_.cut.k_phi)) st.partition_bounds_ok = false;
    return r;
  }

  RoundLedger phase1_node(const std::vector<Vertex>& u, std::uint64_t depth) {
    if (depth > p_.d) throw DepthExceeded("phase 1 recursion deeper than d");
    out_.stats.depth_max = std::max(out_.stats.depth_max, depth);
    const Subgraph sub = contract(cur_, u);
    Network net(sub.graph, cfg_.network);
    const std::uint64_t node_seed = derive_seed(seed_, {tag(Stream::kPhase1), depth, u.front()});
    std::vector<std::vector<Vertex>> comps;
    {
      RoundLedger::Scope scope(net.ledger(), "phase1_lowdiam");
      const LowDiamResult ld = low_diam_decomposition(net, p_.beta, cfg_.lowdiam_K, node_seed);
      std::vector<Edge> cut_edges;
      for (EdgeId e : ld.cut_edges) {
        const Edge& ed = sub.graph.edge(e);
        cut_edges.push_back(make_edge(sub.to_parent[ed.u], sub.to_parent[ed.v]));
      }
      remove(cut_edges, Channel::kRemove1);
      for (const auto& grp : ld.components.groups()) {
        std::vector<Vertex> c;
        for (Vertex x : grp) c.push_back(sub.to_parent[x]);
        std::sort(c.begin(), c.end());
        comps.push_back(std::move(c));
      }
    }
    std::vector<RoundLedger> children;
    for (const auto& c : comps) children.push_back(phase1_component(c, depth));
    RoundLedger ledger = std::move(net.ledger());
    ledger.append_parallel(children);
    return ledger;
  }

  RoundLedger phase1_component(const std::vector<Vertex>& u, std::uint64_t depth) {
    RoundLedger ledger;
    if (u.size() <= 1) return ledger;
    const Subgraph sub = contract(cur_, u);
    const std::uint64_t vol = sub.graph.total_volume();
    if (vol <= cfg_.small_volume && u.size() <= kOracleMaxVertices) {
      const auto w = min_conductance_oracle(sub.graph);
      if (static_cast<long double>(w.phi.num()) >=
          static_cast<long double>(p_.phi_k()) * static_cast<long double>(w.phi.den())) {
        ++out_.stats.small_finalized;
        return ledger;
      }
    }
    Network net(sub.graph, cfg_.network);
    const std::uint64_t node_seed = derive_seed(seed_, {tag(Stream::kPhase1), depth, u.front(), 1});
    SparseCutResult r;
    {
      RoundLedger::Scope scope(net.ledger(), "phase1_cut");
      r = cut(net, sub.graph, p_.phi.front(), node_seed);
    }
    ledger = std::move(net.ledger());
    if (!r.cut) return ledger;
    const std::uint64_t vol_c = r.cut->vol_s;
    if (12.0 * static_cast<double>(vol_c) <= p_.epsilon * static_cast<double>(vol)) {
      queue_.push_back(u);
      ++out_.stats.phase2_components;
      return ledger;
    }
    const auto in_c = make_mask(sub.graph.num_vertices(), r.cut->members);
    std::vector<Edge> cut_edges;
    for (const Edge& e : sub.graph.edges()) {
      if (in_c[e.u] != in_c[e.v]) cut_edges.push_back(make_edge(sub.to_parent[e.u], sub.to_parent[e.v]));
    }
    remove(cut_edges, Channel::kRemove2);
    std::vector<Vertex> side_c;
    std::vector<Vertex> side_r;
    for (Vertex x = 0; x < sub.graph.num_vertices(); ++x) (in_c[x] ? side_c : side_r).push_back(sub.to_parent[x]);
    std::vector<RoundLedger> children;
    children.push_back(phase1_node(side_c, depth + 1));
    children.push_back(phase1_node(side_r, depth + 1));
    ledger.append_parallel(children);
    return ledger;
  }

  RoundLedger phase2(const std::vector<Vertex>& u) {
    // G* = G{U} at entry carries every message; the walks run on G{U'}.
    const Subgraph host = contract(cur_, u);
    Network net(host.graph, cfg_.network);
    RoundLedger::Scope scope(net.ledger(), "phase2");
    const std::size_t n = host.graph.num_vertices();
    const double vol_u = static_cast<double>(host.graph.total_volume());
    const double m1 = (p_.epsilon / 6.0) * vol_u;
    const double tau = std::pow(m1, 1.0 / static_cast<double>(p_.k));
    std::vector<char> in_up(n, 1);
    std::uint32_t level = 1;
    double m_level = m1;
    std::uint64_t iterations = 0;
    std::uint64_t call = 0;
    // removed volume per level, for the cumulative check
    std::vector<double> removed_at(p_.k + 2, 0.0);
    auto& st = out_.stats;
    st.level_max = std::max(st.level_max, level);
    st.tau_min = st.tau_min == 0 ? 2 * tau : std::min(st.tau_min, 2 * tau);
    for (;;) {
      std::vector<Vertex> up;
      for (Vertex x = 0; x < n; ++x)
        if (in_up[x]) up.push_back(x);
      const Graph walk = restrict_to(host.graph, up);
      if (walk.num_edges() == 0) break;
      const auto r = cut(net, walk, p_.phi[level], derive_seed(seed_, {tag(Stream::kPhase2), u.front(), call++}));
      if (!r.cut) break;
      const double vol_c = static_cast<double>(r.cut->vol_s);
      if (vol_c <= m_level / (2.0 * tau)) {
        ++level;
        if (level > p_.k) throw LevelOverflow("phase 2 level exceeded k");
        st.level_max = std::max(st.level_max, level);
        m_level /= tau;
        iterations = 0;
        continue;
      }
      ++iterations;
      st.level_iterations_max = std::max(st.level_iterations_max, iterations);
      if (static_cast<double>(iterations) > 2.0 * tau) throw IterationOverflow("phase 2 iterations exceeded 2 tau");
      removed_at[level] += vol_c;
      std::vector<Edge> edges;
      for (Vertex x : r.cut->members) {
        in_up[x] = 0;
        for (Vertex y : cur_.neighbors(host.to_parent[x])) edges.push_back(make_edge(host.to_parent[x], y));
      }
      std::sort(edges.begin(), edges.end());
      edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
      remove(edges, Channel::kRemove3);
    }
    double m_i = m1;
    double suffix = 0;
    for (std::uint32_t i = p_.k; i >= 1; --i) suffix += removed_at[i];
    for (std::uint32_t i = 1; i <= p_.k; ++i) {
      if (suffix > m_i + 1e-9) st.level_volume_ok = false;
      suffix -= removed_at[i];
      m_i /= tau;
    }
    return std::move(net.ledger());
  }

  const Graph& orig_;
  Graph cur_;
  const DecompParams& p_;
  const DecompConfig& cfg_;
  std::uint64_t seed_;
  Decomposition& out_;
  std::vector<std::vector<Vertex>> queue_;
};

}  // namespace

Decomposition expander_decomposition(Network& net, double epsilon, std::uint32_t k, std::uint64_t seed,
                                     const DecompConfig& cfg) {
  const Graph& g = net.graph();
  Decomposition out;
  out.seed = seed;
  out.edges = g.num_edges();
  out.params = derive_decomp_params(g.num_vertices(), g.num_edges(), epsilon, k, cfg.c_h);
  DecompConfig local = cfg;
  local.cut.c_h = cfg.c_h;
  local.network = net.config();
  Decomposer dec(g, out.params, local, seed, out);
  out.ledger = dec.run();
  net.ledger().append(out.ledger);
  const Graph& rest = dec.current();
  out.components = connected_components(rest).groups();
  for (auto& c : out.components) std::sort(c.begin(), c.end());
  std::sort(out.components.begin(), out.components.end());
  const double m = static_cast<double>(out.edges);
  out.budget_ok = static_cast<double>(out.removed.size()) <= epsilon * m;
  for (int i = 0; i < 3; ++i) out.channel_budget_ok[i] = static_cast<double>(out.removed_by_channel[i]) <= epsilon / 3.0 * m;
  if (cfg.verify) out.verification = verify_decomposition(g, out.components, epsilon, out.params.phi_k(), cfg.verify_options);
  return out;
}

std::string decomposition_json(const Decomposition& d, const DecompConfig& cfg) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["components"] = d.components;
  j["removed"] = {{"r1", d.removed_by_channel[0]}, {"r2", d.removed_by_channel[1]}, {"r3", d.removed_by_channel[2]}};
  j["edges"] = d.edges;
  j["epsilon"] = d.params.epsilon;
  j["k"] = d.params.k;
  j["d"] = d.params.d;
  j["beta"] = d.params.beta;
  j["phi"] = d.params.phi;
  j["log2_phi"] = d.params.log2_phi;
  j["phi_k"] = d.params.phi_k();
  j["constants"] = {{"C_H", cfg.c_h},
                    {"K_Phi", cfg.cut.k_phi},
                    {"K", cfg.lowdiam_K},
                    {"phi_floor", cfg.cut.phi_floor},
                    {"phi_ceiling", cfg.cut.phi_ceiling},
                    {"walk", {cfg.cut.constants.t0, cfg.cut.constants.f, cfg.cut.constants.gamma, cfg.cut.constants.eps}},
                    {"profile", cfg.cut.profile == Profile::kPaper ? "paper" : "desk"}};
  const auto tot = d.ledger.totals();
  ordered_json phases = ordered_json::object();
  for (const auto& e : d.ledger.entries()) {
    phases[e.phase] = {{"rounds", e.counters.rounds}, {"messages", e.counters.messages}, {"max_bits", e.counters.max_bits}};
  }
  j["rounds"] = {{"total", tot.rounds}, {"messages", tot.messages}, {"phases", phases}};
  j["budget_ok"] = d.budget_ok;
  j["stats"] = {{"depth_max", d.stats.depth_max},
                {"level_max", d.stats.level_max},
                {"level_iterations_max", d.stats.level_iterations_max},
                {"sparse_cut_calls", d.stats.sparse_cut_calls},
                {"phase2_components", d.stats.phase2_components}};
  j["verified"] = d.verification.pass;
  j["seed"] = d.seed;
  return j.dump();
}

}  // namespace expdecomp
