#include "expdecomp/sparse_cut.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <tuple>
#include <string>

namespace expdecomp {

namespace {

bool within_growth(std::uint64_t vol, std::uint64_t prev, double phi) {
  return static_cast<double>(vol) <= (1.0 + phi) * static_cast<double>(prev);
}

// C.2 / C.2*: rho(x) >= gamma / vol
bool rho_ok(Mass mass, std::uint64_t deg, std::uint64_t vol, double gamma) {
  if (deg == 0) return false;
  const long double rho = std::ldexp(static_cast<long double>(mass), -kMassBits) / static_cast<long double>(deg);
  return rho * static_cast<long double>(vol) >= static_cast<long double>(gamma);
}

// C.3 / C.3*
bool volume_ok(std::uint64_t vol, std::uint64_t total, std::uint32_t b, bool starred) {
  const bool upper = starred ? 12 * vol <= 11 * total : 6 * vol <= 5 * total;
  const bool lower = 14.0L * static_cast<long double>(vol) >= 5.0L * std::ldexp(1.0L, static_cast<int>(b));
  return upper && lower;
}

bool phi_ok(std::uint64_t boundary, std::uint64_t vol, std::uint64_t total, double bound) {
  return conductance_value(boundary, vol, total) <= bound;
}

struct Candidate {
  std::size_t j = 0;
  std::uint64_t vol = 0;
  std::uint64_t boundary = 0;
};

/// Tests candidate j_x (plain when x is the first index or j_x = j_{x-1} + 1).
bool passes(const Candidate& c, bool starred, Mass mass_ref, std::uint64_t deg_ref, std::uint64_t total,
            const NibbleParams& params, std::uint32_t b) {
  const double bound = starred ? 12.0 * params.phi : params.phi;
  return phi_ok(c.boundary, c.vol, total, bound) && rho_ok(mass_ref, deg_ref, c.vol, params.gamma) &&
         volume_ok(c.vol, total, b, starred);
}

/// Boundary sizes of every sweep prefix.
std::vector<std::uint64_t> prefix_boundaries(const Graph& g, const SweepOrder& s, std::vector<char>& mark) {
  std::vector<std::uint64_t> out(s.order.size() + 1, 0);
  for (std::size_t j = 0; j < s.order.size(); ++j) {
    const Vertex x = s.order[j];
    std::uint64_t inside = 0;
    for (Vertex y : g.neighbors(x)) inside += mark[y] ? 1 : 0;
    out[j + 1] = out[j] + g.simple_degree(x) - 2 * inside;
    mark[x] = 1;
  }
  for (Vertex x : s.order) mark[x] = 0;
  return out;
}

NibbleOutcome finish(const Graph& g, const SweepOrder& s, std::size_t j, std::uint64_t t, bool starred,
                     NibbleOutcome out) {
  std::vector<Vertex> members(s.order.begin(), s.order.begin() + static_cast<std::ptrdiff_t>(j));
  std::sort(members.begin(), members.end());
  out.cut = cut_stats(g, members);
  out.t = t;
  out.j = j;
  out.starred = starred;
  return out;
}

enum class Schedule { kAll, kApprox };

NibbleOutcome central_scan(const Graph& g, Vertex v, const NibbleParams& params, std::uint32_t b,
                           const NibbleOptions& opt, Schedule schedule) {
  NibbleOutcome out;
  const std::uint64_t total = g.total_volume();
  FixedWalk walk(g, v, params.eps_b(b));
  out.ever_positive.assign(g.num_vertices(), 0);
  out.ever_positive[v] = 1;
  std::vector<char> mark(g.num_vertices(), 0);
  StateHistory history;
  for (std::uint64_t t = 1; t <= params.t0; ++t) {
    walk.step();
    out.steps = t;
    out.t = t;
    for (Vertex x : walk.support()) out.ever_positive[x] = 1;
    if (opt.stop_at_cycle) {
      if ((out.period = history.period(walk.mass(), t)) != 0) break;
      history.push(walk.mass(), t);
    }
    if (walk.support().empty()) continue;
    const SweepOrder s = sweep_order(g, walk.mass(), walk.support());
    const auto bnd = prefix_boundaries(g, s, mark);
    const auto& mass = walk.mass();
    auto at = [&](std::size_t j) { return Candidate{j, s.prefix_volume[j], bnd[j]}; };
    if (schedule == Schedule::kAll) {
      for (std::size_t j = 1; j <= s.order.size(); ++j) {
        const Vertex x = s.order[j - 1];
        if (passes(at(j), false, mass[x], g.degree(x), total, params, b)) return finish(g, s, j, t, false, out);
      }
      continue;
    }
    const auto seq = jx_sequence(s.prefix_volume, params.phi);
    for (std::size_t x = 0; x < seq.size(); ++x) {
      const std::size_t j = seq[x];
      const bool starred = x > 0 && j != seq[x - 1] + 1;
      const Vertex ref = s.order[(starred ? seq[x - 1] : j) - 1];
      if (passes(at(j), starred, mass[ref], g.degree(ref), total, params, b)) return finish(g, s, j, t, starred, out);
    }
  }
  return out;
}

}  // namespace

ParallelNibbleParams derive_parallel_params(const NibbleParams& np, std::uint64_t vol_w, std::uint64_t vol_v,
                                            double p, const SparseCutConfig& cfg) {
  ParallelNibbleParams pp;
  pp.vol = vol_w;
  const double k_den = np.constants.eps * np.ell * static_cast<double>(np.t0 + 1) * static_cast<double>(np.t0) *
                       np.ln_me4() / np.phi;
  pp.k = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(static_cast<double>(vol_w) / k_den)));
  auto w_of = [](std::uint64_t vol) {
    const double l = vol > 1 ? std::ceil(std::log(static_cast<double>(vol))) : 0.0;
    return std::max<std::uint64_t>(10, 10 * static_cast<std::uint64_t>(l));
  };
  pp.w = w_of(vol_w);
  pp.g = cfg.desk_g && cfg.profile == Profile::kDesk ? 1.0 : std::ceil(10.0 * static_cast<double>(w_of(vol_v)) * k_den);
  const double reps = p > 0 && p < 1 ? std::max(1.0, std::ceil(std::log(1.0 / p) / std::log(7.0 / 4.0))) : 1.0;
  const double s = 4.0 * pp.g * reps;
  pp.s = s >= 1.8e19 ? std::numeric_limits<std::uint64_t>::max() : static_cast<std::uint64_t>(s);
  return pp;
}

std::vector<std::size_t> jx_sequence(std::span<const std::uint64_t> prefix_volume, double phi) {
  const std::size_t jmax = prefix_volume.size() - 1;
  std::vector<std::size_t> seq;
  if (jmax == 0) return seq;
  seq.push_back(1);
  while (seq.back() < jmax) {
    const std::size_t prev = seq.back();
    // prefix volumes are non-decreasing, so the admissible j form a prefix of 1..jmax
    std::size_t lo = prev;
    std::size_t hi = jmax;
    while (lo < hi) {
      const std::size_t mid = lo + (hi - lo + 1) / 2;
      if (within_growth(prefix_volume[mid], prefix_volume[prev], phi)) {
        lo = mid;
      } else {
        hi = mid - 1;
      }
    }
    seq.push_back(std::max(prev + 1, lo));
  }
  return seq;
}

std::uint32_t sample_level(Rng& rng, std::uint32_t ell) {
  const double norm = 1.0 - std::ldexp(1.0, -static_cast<int>(ell));
  const double u = uniform01(rng) * norm;
  double cum = 0;
  for (std::uint32_t i = 1; i < ell; ++i) {
    cum += std::ldexp(1.0, -static_cast<int>(i));
    if (u < cum) return i;
  }
  return ell;
}

NibbleOutcome nibble(const Graph& g, Vertex v, const NibbleParams& params, std::uint32_t b, const NibbleOptions& opt) {
  return central_scan(g, v, params, b, opt, Schedule::kAll);
}

NibbleOutcome approximate_nibble_reference(const Graph& g, Vertex v, const NibbleParams& params, std::uint32_t b,
                                           const NibbleOptions& opt) {
  return central_scan(g, v, params, b, opt, Schedule::kApprox);
}

NibbleOutcome approximate_nibble(Network& net, const Graph& g, Vertex v, const NibbleParams& params,
                                 std::uint32_t b, const NibbleOptions& opt) {
  const Graph& host = net.graph();
  const std::size_t n = g.num_vertices();
  const std::uint64_t total = g.total_volume();
  const double eps = params.eps_b(b);
  NibbleOutcome out;
  out.ever_positive.assign(n, 0);
  out.ever_positive[v] = 1;

  std::vector<char> in_w(n, 0);
  for (Vertex x = 0; x < n; ++x) in_w[x] = g.degree(x) > 0 || x == v;
  const EdgeFilter in_pstar = [&](EdgeId e) {
    const Edge& ed = host.edge(e);
    return in_w[ed.u] && in_w[ed.v] && (out.ever_positive[ed.u] || out.ever_positive[ed.v]);
  };

  std::optional<FixedWalk> central;
  std::vector<Mass> mass;
  std::vector<Mass> thr;
  if (net.simulated()) {
    mass.assign(n, 0);
    mass[v] = kMassOne;
    thr = mass_thresholds(g, eps);
  } else {
    central.emplace(g, v, eps);
  }

  Rng rng = make_rng(opt.search_seed, {tag(Stream::kSearch)});
  BfsTree tree;
  std::uint64_t pstar_edges = 0;
  bool grown = true;
  std::vector<SearchKey> keys(n);
  std::vector<std::uint64_t> weights(n, 0);
  std::vector<char> universe(n, 0);
  StateHistory history;
  for (Vertex x = 0; x < n; ++x) weights[x] = g.degree(x);

  for (std::uint64_t t = 1; t <= params.t0; ++t) {
    RoundLedger::Scope walk_scope(net.ledger(), "walk");
    if (central) {
      central->step();
      net.charge(1, central->last_messages(), 64);
    } else {
      simulated_walk_step(net, g, mass, thr);
    }
    const std::vector<Mass>& cur = central ? central->mass() : mass;
    out.steps = t;
    out.t = t;
    for (Vertex x = 0; x < n; ++x) {
      if (cur[x] > 0 && !out.ever_positive[x]) {
        out.ever_positive[x] = 1;
        grown = true;
      }
    }
    if (grown) {
      RoundLedger::Scope s(net.ledger(), "walk_tree");
      tree = bfs_tree(net, v, in_pstar);
      pstar_edges = 0;
      for (EdgeId e = 0; e < host.num_edges(); ++e) pstar_edges += in_pstar(e) ? 1 : 0;
      grown = false;
    }
    if (opt.stop_at_cycle) {
      // every tree vertex reports which periods its own history rules out
      RoundLedger::Scope s(net.ledger(), "walk_cycle");
      if (net.simulated()) {
        std::vector<Words> masks(n, Words{});
        for (Vertex x : tree.order) masks[x] = Words{history.diff_mask(x, cur, t), 0, 0};
        const Combine orr = [](const Words& a, const Words& c) { return Words{a[0] | c[0], 0, 0}; };
        const std::uint64_t ruled_out = convergecast(net, tree, std::move(masks), orr, kMaxPeriod)[tree.root][0];
        if (~ruled_out != 0) {
          out.period = static_cast<std::uint32_t>(std::countr_one(ruled_out)) + 1;
          break;
        }
      } else {
        // the OR has a zero bit exactly at the periods where the whole state repeats
        charge_tree_pass(net, tree, kMaxPeriod);
        if ((out.period = history.period(cur, t)) != 0) break;
      }
      history.push(cur, t);
    }

    RoundLedger::Scope scan_scope(net.ledger(), "sweep_search");
    std::size_t support = 0;
    for (Vertex x = 0; x < n; ++x) {
      keys[x] = SearchKey{cur[x], g.degree(x), x};
      universe[x] = cur[x] > 0;
      support += universe[x] ? 1 : 0;
    }
    std::vector<std::uint64_t> ones(universe.begin(), universe.end());
    const std::uint64_t jmax = tree_sum(net, tree, ones);
    if (jmax == 0 || support == 0) continue;

    // accounted runs sort once per step and grow the candidate's cut incrementally
    SweepIndex ix;
    std::vector<std::uint32_t> pos;
    std::size_t grown_to = 0;
    std::uint64_t grown_cross = 0;
    if (!net.simulated()) {
      ix = make_sweep_index(tree, universe, keys, weights);
      pos.assign(n, 0);
      for (std::size_t i = 0; i < ix.sorted.size(); ++i) pos[ix.sorted[i]] = static_cast<std::uint32_t>(i + 1);
    }

    std::size_t prev_j = 0;
    std::uint64_t prev_vol = 0;
    Mass prev_mass = 0;
    std::uint64_t prev_deg = 0;
    while (prev_j < jmax) {
      const std::size_t floor_j = prev_j + 1;
      const std::uint64_t base = prev_vol;
      const PrefixPredicate pred = [&](std::size_t rank, std::uint64_t w) {
        return rank <= floor_j || (prev_j > 0 && within_growth(w, base, params.phi));
      };
      const SearchResult r = net.simulated()
                                 ? random_binary_search(net, tree, universe, keys, weights, pred, rng)
                                 : random_binary_search_sorted(net, tree, ix, pred, rng);
      const std::size_t j = r.index;
      const Vertex last = *r.boundary;
      const bool starred = prev_j > 0 && j != prev_j + 1;

      // members learn membership (one round on P*), then boundary and volume go up the tree
      net.charge(1, 2 * pstar_edges, 1);
      auto member = [&](Vertex x) {
        return universe[x] && (x == last || sweep_before(keys[x], keys[last]));
      };
      Candidate cand{j, 0, 0};
      if (net.simulated()) {
        std::vector<Words> vals(n, Words{});
        for (Vertex x : tree.order) {
          if (!member(x)) continue;
          std::uint64_t cross = 0;
          for (Vertex y : g.neighbors(x)) cross += member(y) ? 0 : 1;
          vals[x] = Words{cross, g.degree(x), 0};
        }
        const Combine add = [](const Words& a, const Words& c) { return Words{a[0] + c[0], a[1] + c[1], 0}; };
        const auto folded = convergecast(net, tree, std::move(vals), add, 128);
        cand.vol = folded[tree.root][1];
        cand.boundary = folded[tree.root][0];
      } else {
        for (; grown_to < j; ++grown_to) {
          const Vertex x = ix.sorted[grown_to];
          for (Vertex y : g.neighbors(x)) {
            if (y == x) continue;
            if (pos[y] != 0 && pos[y] < pos[x]) {
              --grown_cross;
            } else {
              ++grown_cross;
            }
          }
        }
        charge_tree_pass(net, tree, 128);
        cand.vol = ix.prefix[j];
        cand.boundary = grown_cross;
      }
      const Mass ref_mass = starred ? prev_mass : cur[last];
      const std::uint64_t ref_deg = starred ? prev_deg : g.degree(last);
      const bool ok = passes(cand, starred, ref_mass, ref_deg, total, params, b);
      if (net.simulated()) {
        broadcast_value(net, tree, ok ? 1 : 0);
      } else {
        charge_tree_pass(net, tree, 64);
      }
      if (ok) {
        std::vector<Vertex> members;
        for (Vertex x = 0; x < n; ++x) {
          if (member(x)) members.push_back(x);
        }
        out.cut = cut_stats(g, members);
        out.j = j;
        out.starred = starred;
        return out;
      }
      prev_j = j;
      prev_vol = cand.vol;
      prev_mass = cur[last];
      prev_deg = g.degree(last);
    }
  }
  return out;
}

namespace {

std::vector<Instance> sample_instances(Network& net, const BfsTree& host_tree, const Graph& working,
                                       const NibbleParams& params, std::uint64_t k, std::uint64_t seed) {
  RoundLedger::Scope scope(net.ledger(), "instance_sampling");
  const std::size_t n = working.num_vertices();
  Rng level_rng = make_rng(seed, {tag(Stream::kNibbleLevel)});
  std::vector<std::uint64_t> counts(params.ell, 0);
  for (std::uint64_t i = 0; i < k; ++i) ++counts[sample_level(level_rng, params.ell) - 1];
  std::vector<std::uint64_t> weight(n, 0);
  for (Vertex x = 0; x < n; ++x) weight[x] = working.degree(x);
  const auto placed = sample_by_degree(net, host_tree, weight, counts, derive_seed(seed, {tag(Stream::kTokenRouting)}));
  std::vector<Instance> inst;
  std::map<std::pair<Vertex, std::uint32_t>, std::uint64_t> seen;
  for (const Placement& pl : placed) {
    const std::uint64_t occ = seen[{pl.vertex, pl.b}]++;
    inst.push_back({pl.vertex, pl.b, derive_seed(seed, {tag(Stream::kInstanceId), pl.vertex, pl.b, occ}), {}});
  }
  std::sort(inst.begin(), inst.end(), [](const Instance& a, const Instance& c) {
    return std::tie(a.id, a.v, a.b) < std::tie(c.id, c.v, c.b);
  });
  return inst;
}

/// Runs one instance into its own ledger; returns the outcome and the instance ledger.
NibbleCache::Entry run_instance(Network& net, const Graph& working, const Instance& in, const NibbleParams& params,
                                const SparseCutConfig& cfg, std::uint64_t seed, NibbleCache* cache) {
  const std::uint64_t version = cache ? cache->version : 0;
  if (cache && cfg.cache) {
    auto it = cache->entries.find({in.v, in.b});
    if (it != cache->entries.end()) {
      ++cache->hits;
      return it->second;
    }
  }
  RoundLedger saved = std::move(net.ledger());
  net.ledger() = RoundLedger{};
  net.ledger().set_phase("nibble");
  NibbleOptions opt;
  opt.stop_at_cycle = cfg.stop_at_cycle;
  opt.search_seed = derive_seed(seed, {tag(Stream::kSearch), version, in.v, in.b});
  NibbleCache::Entry e;
  e.outcome = approximate_nibble(net, working, in.v, params, in.b, opt);
  e.ledger = std::move(net.ledger());
  net.ledger() = std::move(saved);
  if (cache && cfg.cache) cache->entries.emplace(std::make_pair(in.v, in.b), e);
  return e;
}

}  // namespace

ParallelNibbleResult parallel_nibble(Network& net, const BfsTree& host_tree, const Graph& working, std::uint64_t vol_v, const NibbleParams& params,
                                     const SparseCutConfig& cfg, std::uint64_t seed, NibbleCache* cache,
                                     std::uint64_t k_override) {
  ParallelNibbleResult res;
  const std::uint64_t vol_w = working.total_volume();
  const double p = cfg.p > 0 ? cfg.p : 1.0 / std::max(4.0, std::pow(static_cast<double>(working.num_vertices()), 2));
  res.params = derive_parallel_params(params, vol_w, vol_v, p, cfg);
  const std::uint64_t k = k_override ? k_override : res.params.k;
  res.instances = sample_instances(net, host_tree, working, params, k, seed);

  // search streams are keyed by (W version, v, b), so cached outcomes equal recomputed ones
  const std::uint64_t search_seed = cache ? cache->search_seed : seed;
  std::vector<RoundLedger> parts;
  std::vector<std::uint64_t> participation(working.num_edges(), 0);
  for (Instance& in : res.instances) {
    auto e = run_instance(net, working, in, params, cfg, search_seed, cache);
    in.cut = e.outcome.cut;
    parts.push_back(std::move(e.ledger));
    for (EdgeId id = 0; id < working.num_edges(); ++id) {
      const Edge& ed = working.edge(id);
      if (e.outcome.ever_positive[ed.u] || e.outcome.ever_positive[ed.v]) ++participation[id];
    }
  }
  for (std::uint64_t c : participation) res.max_participation = std::max(res.max_participation, c);
  net.ledger().append_parallel(parts, std::max<std::uint64_t>(1, res.max_participation));

  RoundLedger::Scope scope(net.ledger(), "instance_merge");
  if (res.max_participation > res.params.w) {
    // endpoints of an overloaded edge broadcast the abort symbol
    net.charge(2 * host_tree.height, host_tree.size() - 1, 1);
    res.overlap_abort = true;
    return res;
  }
  // instance ids are pipelined down the tree; then i* is located by a ranked search over i
  net.charge(host_tree.height + k, (host_tree.size() - 1) * k, 64);
  const std::size_t n = working.num_vertices();
  std::vector<std::uint64_t> vol_u(res.instances.size() + 1, 0);
  std::vector<char> in_u(n, 0);
  for (std::size_t i = 0; i < res.instances.size(); ++i) {
    vol_u[i + 1] = vol_u[i];
    if (!res.instances[i].cut) continue;
    for (Vertex x : res.instances[i].cut->members) {
      if (!in_u[x]) {
        in_u[x] = 1;
        vol_u[i + 1] += working.degree(x);
      }
    }
  }
  Rng sel = make_rng(seed, {tag(Stream::kSelection)});
  const auto ranked = ranked_binary_search(
      res.instances.size(), [&](std::size_t i) { return res.params.within_z(vol_u[i]); }, sel);
  for (std::size_t probe = 0; probe < ranked.probes.size(); ++probe) {
    net.charge(2 * host_tree.height, 2 * (host_tree.size() - 1), 64);
  }
  res.i_star = ranked.index;
  if (res.i_star == 0 || vol_u[res.i_star] == 0) return res;
  std::vector<Vertex> u;
  std::fill(in_u.begin(), in_u.end(), 0);
  for (std::size_t i = 0; i < res.i_star; ++i) {
    if (!res.instances[i].cut) continue;
    for (Vertex x : res.instances[i].cut->members) {
      if (!in_u[x]) {
        in_u[x] = 1;
        u.push_back(x);
      }
    }
  }
  std::sort(u.begin(), u.end());
  res.cut = std::move(u);
  return res;
}

Instance random_nibble(Network& net, const BfsTree& host_tree, const Graph& working, const NibbleParams& params,
                       const SparseCutConfig& cfg, std::uint64_t seed) {
  auto inst = sample_instances(net, host_tree, working, params, 1, seed);
  if (inst.empty()) return {};
  auto e = run_instance(net, working, inst.front(), params, cfg, seed, nullptr);
  net.ledger().append(e.ledger);
  inst.front().cut = e.outcome.cut;
  return inst.front();
}

PartitionResult partition(Network& net, double phi, double p, const SparseCutConfig& cfg, std::uint64_t seed) {
  return partition(net, net.graph(), phi, p, cfg, seed);
}

PartitionResult partition(Network& net, const Graph& g, double phi, double p, const SparseCutConfig& cfg,
                          std::uint64_t seed) {
  const std::size_t n = g.num_vertices();
  PartitionResult res;
  res.phi = phi;
  res.vol_total = g.total_volume();
  if (!(phi > 0.0) || phi > 1.0) throw BadPhi("partition needs 0 < phi <= 1");
  if (n != net.size()) throw std::invalid_argument("walk graph and host differ in size");
  if (n == 0 || g.num_edges() == 0) return res;
  if (connected_components(net.graph()).count != 1) throw Disconnected("partition needs a connected host graph");
  const std::uint64_t vol_v = g.total_volume();
  const auto params = derive_nibble_params(std::max<std::uint64_t>(1, (vol_v + 1) / 2), phi, cfg.profile, cfg.constants);
  RoundLedger::Scope scope(net.ledger(), "partition");
  const BfsTree host_tree = bfs_tree(net, 0);
  res.s = derive_parallel_params(params, vol_v, vol_v, p, cfg).s;

  std::vector<char> in_w(n, 0);
  std::vector<Vertex> w_list;
  for (Vertex x = 0; x < n; ++x) {
    if (g.degree(x) > 0) {
      in_w[x] = 1;
      w_list.push_back(x);
    }
  }
  Graph working = g;
  std::uint64_t vol_w = vol_v;
  NibbleCache cache;
  cache.search_seed = derive_seed(seed, {tag(Stream::kSearch)});
  for (std::uint64_t i = 1; i <= res.s; ++i) {
    res.iterations = i;
    auto r = parallel_nibble(net, host_tree, working, vol_v, params, cfg,
                             derive_seed(seed, {tag(Stream::kPartition), i}), &cache);
    res.nibble_calls += r.instances.size();
    res.w_max = std::max(res.w_max, r.params.w);
    if (r.overlap_abort) ++res.overlap_aborts;
    if (r.cut) {
      res.max_overlap_nonempty = std::max(res.max_overlap_nonempty, r.max_participation);
      for (Vertex x : *r.cut) {
        in_w[x] = 0;
        vol_w -= g.degree(x);
      }
      res.pieces.push_back(*r.cut);
      w_list.clear();
      for (Vertex x = 0; x < n; ++x) {
        if (in_w[x]) w_list.push_back(x);
      }
      working = restrict_to(g, w_list);
      cache.reset();
    }
    if (48 * vol_w <= 47 * vol_v) break;
  }
  res.cache_hits = cache.hits;
  for (const auto& piece : res.pieces) res.members.insert(res.members.end(), piece.begin(), piece.end());
  std::sort(res.members.begin(), res.members.end());
  res.vol_c = vol_v - vol_w;
  res.boundary = boundary_size(g, res.members);
  return res;
}

double h_bound(double theta, std::size_t n, double c_h) {
  const double lg = std::max(1.0, std::log2(static_cast<double>(std::max<std::size_t>(n, 2))));
  return c_h * std::cbrt(theta) * std::pow(lg, 5.0 / 3.0);
}

double h_inverse(double x, std::size_t n, double c_h) {
  const double lg = std::max(1.0, std::log2(static_cast<double>(std::max<std::size_t>(n, 2))));
  const double r = x / (c_h * std::pow(lg, 5.0 / 3.0));
  return r * r * r;
}

double internal_phi(double phi_target, std::uint64_t m, const SparseCutConfig& cfg) {
  const double l = std::log(static_cast<double>(std::max<std::uint64_t>(m, 1))) + 4.0;
  const double x = std::cbrt(phi_target * cfg.constants.f * l * l);
  if (cfg.profile == Profile::kPaper) return std::min(x, 1.0 / 12.0);
  return std::clamp(x, cfg.phi_floor, cfg.phi_ceiling);
}

SparseCutResult nearly_balanced_sparse_cut(Network& net, double phi_target, const SparseCutConfig& cfg,
                                           std::uint64_t seed) {
  return nearly_balanced_sparse_cut(net, net.graph(), phi_target, cfg, seed);
}

SparseCutResult nearly_balanced_sparse_cut(Network& net, const Graph& g, double phi_target,
                                           const SparseCutConfig& cfg, std::uint64_t seed) {
  const std::size_t n = g.num_vertices();
  if (!(phi_target > 0.0)) throw BadPhi("phi_target must be positive");
  if (cfg.profile == Profile::kPaper && n >= 2) {
    const double cap = 1.0 / std::pow(std::log2(static_cast<double>(n)), 5.0);
    if (phi_target > cap) throw BadPhi("phi_target above the 1/log^5 n cap");
  }
  SparseCutResult res;
  res.phi_target = phi_target;
  const std::uint64_t m = std::max<std::uint64_t>(1, (g.total_volume() + 1) / 2);
  res.phi_internal = internal_phi(phi_target, m, cfg);
  res.p = cfg.p > 0 ? cfg.p : 1.0 / std::max(4.0, static_cast<double>(n) * static_cast<double>(n));
  res.h_value = h_bound(phi_target, n, cfg.c_h);
  res.partition = partition(net, g, res.phi_internal, res.p, cfg, seed);
  if (!res.partition.members.empty()) res.cut = cut_stats(g, res.partition.members);
  return res;
}

}  // namespace expdecomp
