#include "expdecomp/walks.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace expdecomp {

NibbleParams derive_nibble_params(std::uint64_t m, double phi, Profile profile, const WalkConstants& c) {
  if (!(phi > 0.0) || phi > 1.0) throw BadPhi("phi must lie in (0, 1], got " + std::to_string(phi));
  if (m == 0) m = 1;
  NibbleParams p;
  p.m = m;
  p.phi = phi;
  p.profile = profile;
  p.constants = c;
  p.ell = std::max<std::uint32_t>(1, ceil_log2(m));
  const double lnm = std::log(static_cast<double>(m));
  p.t0 = static_cast<std::uint64_t>(std::ceil(c.t0 * (lnm + 2.0) / (phi * phi)));
  p.f_phi = phi * phi * phi / (c.f * (lnm + 4.0) * (lnm + 4.0));
  p.gamma = 5.0 * phi / (c.gamma * (lnm + 4.0));
  p.eps_base = phi / (c.eps * (lnm + 4.0) * static_cast<double>(p.t0));
  return p;
}

NibbleParams derive_nibble_params(std::uint64_t m, double phi, Profile profile) {
  return derive_nibble_params(m, phi, profile, WalkConstants::for_profile(profile));
}

Distribution indicator(std::size_t n, Vertex v) {
  Distribution p(n, 0.0);
  p[v] = 1.0;
  return p;
}

Distribution stationary(const Graph& g) {
  Distribution p(g.num_vertices(), 0.0);
  const double total = static_cast<double>(g.total_volume());
  for (Vertex v = 0; v < g.num_vertices(); ++v) p[v] = static_cast<double>(g.degree(v)) / total;
  return p;
}

Distribution lazy_step(const Graph& g, const Distribution& p) {
  const std::size_t n = g.num_vertices();
  Distribution q(n, 0.0);
  for (Vertex u = 0; u < n; ++u) {
    if (p[u] == 0.0) continue;
    const auto deg = g.degree(u);
    if (deg == 0) {
      q[u] += p[u];
      continue;
    }
    const double share = p[u] / (2.0 * static_cast<double>(deg));
    q[u] += p[u] / 2.0 + share * g.self_loops(u);
    for (Vertex w : g.neighbors(u)) q[w] += share;
  }
  return q;
}

Distribution truncate(const Graph& g, const Distribution& p, double eps) {
  Distribution q = p;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (q[v] < 2.0 * eps * static_cast<double>(g.degree(v))) q[v] = 0.0;
  }
  return q;
}

std::vector<Mass> mass_thresholds(const Graph& g, double eps) {
  std::vector<Mass> thr(g.num_vertices(), 0);
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    const long double x = std::ceil(2.0L * eps * static_cast<long double>(g.degree(v)) * std::ldexp(1.0L, kMassBits));
    thr[v] = x >= static_cast<long double>(std::numeric_limits<Mass>::max()) ? std::numeric_limits<Mass>::max()
                                                                              : static_cast<Mass>(x);
  }
  return thr;
}

FixedWalk::FixedWalk(const Graph& g, Vertex start, double eps)
    : g_(&g),
      threshold_(mass_thresholds(g, eps)),
      mass_(g.num_vertices(), 0),
      next_(g.num_vertices(), 0),
      in_touched_(g.num_vertices(), 0),
      participants_(g.num_edges(), 0) {
  mass_[start] = kMassOne;
  support_.push_back(start);
  mark(start);
}

void FixedWalk::mark(Vertex v) {
  for (EdgeId e : g_->incident_edges(v)) {
    if (!participants_[e]) {
      participants_[e] = 1;
      ++participant_count_;
    }
  }
}

void FixedWalk::step() {
  const Graph& g = *g_;
  touched_.clear();
  last_messages_ = 0;
  auto touch = [&](Vertex v) {
    if (!in_touched_[v]) {
      in_touched_[v] = 1;
      touched_.push_back(v);
      next_[v] = 0;
    }
  };
  for (Vertex u : support_) {
    touch(u);
    const Mass p = mass_[u];
    const std::uint64_t deg = g.degree(u);
    const auto nb = g.neighbors(u);
    last_messages_ += nb.size();
    if (deg == 0) {
      next_[u] += p;
      continue;
    }
    const Mass share = p / (2 * deg);
    next_[u] += p - share * nb.size();
    for (Vertex w : nb) {
      touch(w);
      next_[w] += share;
    }
  }
  std::sort(touched_.begin(), touched_.end());
  bool changed = false;
  std::vector<Vertex> support;
  support.reserve(touched_.size());
  for (Vertex v : touched_) {
    in_touched_[v] = 0;
    Mass x = next_[v];
    if (x > 0 && x < threshold_[v]) {
      x = 0;
      truncated_any_ = true;
    }
    if (x != mass_[v]) changed = true;
    mass_[v] = x;
    if (x > 0) support.push_back(v);
  }
  for (Vertex v : support) {
    if (!participants_.empty()) mark(v);
  }
  support_ = std::move(support);
  last_changed_ = changed;
  ++t_;
}

std::uint64_t mass_hash(const std::vector<Mass>& m) {
  std::uint64_t h = 0x9e3779b97f4a7c15ull;
  for (Mass x : m) h = splitmix64(h ^ x);
  return h;
}

const StateHistory::Entry* StateHistory::at(std::uint64_t t) const {
  const Entry& e = ring_[t % kMaxPeriod];
  return e.t == t && t >= 1 ? &e : nullptr;
}

std::uint32_t StateHistory::period(const std::vector<Mass>& cur, std::uint64_t t) const {
  const std::uint64_t h = mass_hash(cur);
  for (std::uint32_t p = 1; p <= kMaxPeriod && p < t; ++p) {
    const Entry* e = at(t - p);
    if (e && e->hash == h && e->mass == cur) return p;
  }
  return 0;
}

std::uint64_t StateHistory::diff_mask(Vertex v, const std::vector<Mass>& cur, std::uint64_t t) const {
  std::uint64_t mask = 0;
  for (std::uint32_t p = 1; p <= kMaxPeriod; ++p) {
    const Entry* e = p < t ? at(t - p) : nullptr;
    if (!e || e->mass[v] != cur[v]) mask |= std::uint64_t{1} << (p - 1);
  }
  return mask;
}

void StateHistory::push(const std::vector<Mass>& cur, std::uint64_t t) {
  Entry& e = ring_[t % kMaxPeriod];
  e.t = t;
  e.hash = mass_hash(cur);
  e.mass = cur;
}

std::vector<TruncatedWalkState> run_truncated_walk(Network& net, const Graph& g, Vertex v, const NibbleParams& params,
                                                   std::uint32_t b) {
  const double eps = params.eps_b(b);
  std::vector<TruncatedWalkState> states;
  FixedWalk walk(g, v, eps);
  states.push_back({0, walk.mass(), eps, walk.participants()});
  if (!net.simulated()) {
    for (std::uint64_t t = 1; t <= params.t0; ++t) {
      walk.step();
      net.charge(1, walk.last_messages(), 64);
      states.push_back({t, walk.mass(), eps, walk.participants()});
    }
    return states;
  }
  const auto thr = mass_thresholds(g, eps);
  std::vector<Mass> mass(g.num_vertices(), 0);
  mass[v] = kMassOne;
  std::vector<char> part = walk.participants();
  for (std::uint64_t t = 1; t <= params.t0; ++t) {
    simulated_walk_step(net, g, mass, thr);
    for (Vertex u = 0; u < g.num_vertices(); ++u) {
      if (mass[u] == 0) continue;
      for (EdgeId e : g.incident_edges(u)) part[e] = 1;
    }
    states.push_back({t, mass, eps, part});
  }
  return states;
}

bool simulated_walk_step(Network& net, const Graph& g, std::vector<Mass>& mass, const std::vector<Mass>& thresholds) {
  const std::size_t n = g.num_vertices();
  std::vector<Mass> keep(n, 0);
  net.clear_inboxes();
  net.run_round([&](Vertex u, std::span<const Incoming>, Outbox& out) {
    const Mass p = mass[u];
    if (p == 0) return;
    const std::uint64_t deg = g.degree(u);
    const auto nb = g.neighbors(u);
    const Mass share = deg == 0 ? 0 : p / (2 * deg);
    keep[u] = p - share * nb.size();
    for (Vertex w : nb) out.send(w, Message{10, 64, {share, 0, 0}, nullptr});
  });
  bool changed = false;
  for (Vertex u = 0; u < n; ++u) {
    Mass x = keep[u];
    for (const auto& m : net.inbox(u)) x += m.msg.w[0];
    if (x < thresholds[u]) x = 0;
    if (x != mass[u]) changed = true;
    mass[u] = x;
  }
  net.clear_inboxes();
  return changed;
}

SweepOrder sweep_order(const Graph& g, const std::vector<Mass>& mass, std::span<const Vertex> support) {
  SweepOrder s;
  s.order.assign(support.begin(), support.end());
  std::sort(s.order.begin(), s.order.end(), [&](Vertex a, Vertex b) {
    return sweep_before({mass[a], g.degree(a), a}, {mass[b], g.degree(b), b});
  });
  s.prefix_volume.assign(s.order.size() + 1, 0);
  for (std::size_t j = 0; j < s.order.size(); ++j) s.prefix_volume[j + 1] = s.prefix_volume[j] + g.degree(s.order[j]);
  return s;
}

SweepOrder sweep_order(const Graph& g, const TruncatedWalkState& state) {
  std::vector<Vertex> support;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (state.mass[v] > 0) support.push_back(v);
  }
  return sweep_order(g, state.mass, support);
}

std::vector<Vertex> z_set(const Graph& g, Vertex u, const NibbleParams& params, std::uint32_t b) {
  const std::size_t n = g.num_vertices();
  if (n > 64) throw TooLarge("z_set is limited to n <= 64");
  const double eps = params.eps_b(b);
  const double deg_u = static_cast<double>(g.degree(u));
  std::vector<Vertex> z;
  for (Vertex v = 0; v < n; ++v) {
    Distribution p = indicator(n, v);
    bool hit = false;
    for (std::uint64_t t = 0; t <= params.t0 && !hit; ++t) {
      if (t > 0) p = lazy_step(g, p);
      hit = deg_u > 0 ? p[u] / deg_u >= eps : p[u] > 0;
    }
    if (hit) z.push_back(v);
  }
  return z;
}

}  // namespace expdecomp
