#include "expdecomp/congest.hpp"

#include <algorithm>
#include <numeric>
#include <nlohmann/json.hpp>
#include <queue>
#include <stdexcept>

namespace expdecomp {

// ---------------------------------------------------------------------------
// RoundLedger

void RoundLedger::set_phase(std::string phase) {
  if (phase == phase_) return;
  phase_ = std::move(phase);
  current_ = static_cast<std::size_t>(-1);
}

RoundLedger::Counters& RoundLedger::slot(const std::string& phase) {
  for (auto& e : entries_) {
    if (e.phase == phase) return e.counters;
  }
  entries_.push_back({phase, {}});
  return entries_.back().counters;
}

void RoundLedger::record(std::uint64_t rounds, std::uint64_t messages, std::uint64_t max_bits) {
  if (current_ >= entries_.size() || entries_[current_].phase != phase_) {
    slot(phase_);
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (entries_[i].phase == phase_) current_ = i;
    }
  }
  auto& c = entries_[current_].counters;
  c.rounds += rounds;
  c.messages += messages;
  c.max_bits = std::max(c.max_bits, max_bits);
}

void RoundLedger::record(const std::string& phase, const Counters& add) {
  auto& c = slot(phase);
  c.rounds += add.rounds;
  c.messages += add.messages;
  c.max_bits = std::max(c.max_bits, add.max_bits);
}

RoundLedger::Counters RoundLedger::totals() const {
  Counters t;
  for (const auto& e : entries_) {
    t.rounds += e.counters.rounds;
    t.messages += e.counters.messages;
    t.max_bits = std::max(t.max_bits, e.counters.max_bits);
  }
  return t;
}

RoundLedger::Counters RoundLedger::phase_totals(const std::string& phase) const {
  for (const auto& e : entries_) {
    if (e.phase == phase) return e.counters;
  }
  return {};
}

void RoundLedger::append(const RoundLedger& other) {
  for (const auto& e : other.entries_) record(e.phase, e.counters);
}

void RoundLedger::append_parallel(std::span<const RoundLedger> parts, std::uint64_t congestion) {
  std::vector<Entry> merged;
  for (const auto& part : parts) {
    for (const auto& e : part.entries_) {
      auto it = std::find_if(merged.begin(), merged.end(), [&](const Entry& m) { return m.phase == e.phase; });
      if (it == merged.end()) {
        merged.push_back(e);
      } else {
        it->counters.rounds = std::max(it->counters.rounds, e.counters.rounds);
        it->counters.messages += e.counters.messages;
        it->counters.max_bits = std::max(it->counters.max_bits, e.counters.max_bits);
      }
    }
  }
  for (auto& e : merged) {
    e.counters.rounds *= std::max<std::uint64_t>(1, congestion);
    record(e.phase, e.counters);
  }
}

std::string RoundLedger::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& e : entries_) {
    arr.push_back({{"phase", e.phase},
                   {"rounds", e.counters.rounds},
                   {"messages", e.counters.messages},
                   {"max_bits", e.counters.max_bits}});
  }
  return arr.dump();
}

// ---------------------------------------------------------------------------
// Network

std::uint32_t ceil_log2(std::uint64_t x) {
  std::uint32_t r = 0;
  while ((std::uint64_t{1} << r) < x && r < 63) ++r;
  return r;
}

Network::Network(Graph host, NetworkConfig cfg) : graph_(std::move(host)), cfg_(cfg) {
  id_bits_ = std::max<std::uint32_t>(1, ceil_log2(graph_.num_vertices() + 1));
  bandwidth_ = std::uint64_t{cfg_.bandwidth_factor} * id_bits_;
  inbox_.resize(graph_.num_vertices());
  outbox_.resize(graph_.num_vertices());
}

void Network::clear_inboxes() {
  for (auto& in : inbox_) in.clear();
}

void Network::charge(std::uint64_t rounds, std::uint64_t messages, std::uint64_t max_bits) {
  round_ += rounds;
  ledger_.record(rounds, messages, max_bits);
}

void Network::deliver(bool framed) {
  const std::size_t n = size();
  for (auto& in : inbox_) in.clear();
  std::uint64_t messages = 0;
  std::uint64_t max_bits = 0;
  std::uint64_t frames_max = 0;
  for (Vertex v = 0; v < n; ++v) {
    auto& out = outbox_[v];
    if (out.empty()) continue;
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::size_t i = 0;
    while (i < out.size()) {
      const Vertex to = out[i].first;
      if (!graph_.has_edge(v, to)) {
        for (auto& o : outbox_) o.clear();
        throw std::logic_error("message to a non-neighbor");
      }
      std::uint64_t bits = 0;
      std::size_t j = i;
      for (; j < out.size() && out[j].first == to; ++j) bits += out[j].second.bits;
      if (framed) {
        const std::uint64_t frames = std::max<std::uint64_t>(1, (bits + bandwidth_ - 1) / bandwidth_);
        messages += frames;
        frames_max = std::max(frames_max, frames);
        max_bits = std::max(max_bits, std::min(bits, bandwidth_));
      } else {
        if (bits > bandwidth_) {
          for (auto& o : outbox_) o.clear();
          throw BandwidthExceeded(v, to, bits, bandwidth_);
        }
        messages += j - i;
        max_bits = std::max(max_bits, bits);
      }
      for (std::size_t k = i; k < j; ++k) inbox_[to].push_back({v, std::move(out[k].second)});
      i = j;
    }
    out.clear();
  }
  const std::uint64_t rounds = framed ? std::max<std::uint64_t>(1, frames_max) : 1;
  round_ += rounds;
  ledger_.record(rounds, messages, max_bits);
}

// ---------------------------------------------------------------------------
// BFS

namespace {

bool admits(const EdgeFilter& filter, EdgeId e) { return !filter || filter(e); }

BfsTree empty_tree(std::size_t n, Vertex root) {
  BfsTree t;
  t.root = root;
  t.parent.assign(n, kUnreached);
  t.depth.assign(n, kUnreached);
  t.children.assign(n, {});
  t.parent[root] = root;
  t.depth[root] = 0;
  t.order.push_back(root);
  return t;
}

std::uint32_t bfs_bits(const Network& net) { return net.id_bits(); }

}  // namespace

BfsTree bfs_tree_central(const Graph& g, Vertex root, const EdgeFilter& filter) {
  BfsTree t = empty_tree(g.num_vertices(), root);
  std::size_t head = 0;
  while (head < t.order.size()) {
    const Vertex x = t.order[head++];
    const auto nb = g.neighbors(x);
    const auto ids = g.incident_edges(x);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      const Vertex y = nb[i];
      if (!admits(filter, ids[i])) continue;
      if (t.depth[y] == kUnreached) {
        t.depth[y] = t.depth[x] + 1;
        t.parent[y] = x;
        t.order.push_back(y);
        t.height = std::max(t.height, t.depth[y]);
      } else if (t.depth[y] == t.depth[x] + 1 && x < t.parent[y]) {
        t.parent[y] = x;
      }
    }
  }
  std::stable_sort(t.order.begin(), t.order.end(), [&](Vertex a, Vertex b) {
    return t.depth[a] != t.depth[b] ? t.depth[a] < t.depth[b] : a < b;
  });
  for (Vertex v : t.order) {
    if (v != root) t.children[t.parent[v]].push_back(v);
  }
  for (auto& c : t.children) std::sort(c.begin(), c.end());
  return t;
}

void charge_bfs(Network& net, const BfsTree& tree, const EdgeFilter& filter) {
  // Layer r sends in round r+1 along every admitted edge, for r < height.
  const Graph& g = net.graph();
  std::vector<std::uint64_t> per_layer(tree.height + 1, 0);
  for (Vertex v : tree.order) {
    if (tree.depth[v] >= tree.height) continue;
    std::uint64_t deg = 0;
    for (EdgeId e : g.incident_edges(v)) deg += admits(filter, e);
    per_layer[tree.depth[v]] += deg;
  }
  for (std::uint32_t r = 0; r < tree.height; ++r) net.charge(1, per_layer[r], bfs_bits(net));
}

BfsTree bfs_tree(Network& net, Vertex root, const EdgeFilter& filter) {
  const Graph& g = net.graph();
  if (!net.simulated()) {
    BfsTree t = bfs_tree_central(g, root, filter);
    charge_bfs(net, t, filter);
    return t;
  }
  const std::size_t n = g.num_vertices();
  BfsTree t = empty_tree(n, root);
  std::vector<Vertex> frontier{root};
  std::uint32_t layer = 0;
  net.clear_inboxes();
  while (true) {
    // stop once no frontier vertex has an unvisited admitted neighbor
    bool progress = false;
    for (Vertex x : frontier) {
      const auto nb = g.neighbors(x);
      const auto ids = g.incident_edges(x);
      for (std::size_t i = 0; i < nb.size() && !progress; ++i) {
        progress = admits(filter, ids[i]) && t.depth[nb[i]] == kUnreached;
      }
      if (progress) break;
    }
    if (!progress) break;
    std::vector<char> is_frontier(n, 0);
    for (Vertex x : frontier) is_frontier[x] = 1;
    const std::uint32_t bits = bfs_bits(net);
    net.run_round([&](Vertex v, std::span<const Incoming>, Outbox& out) {
      if (!is_frontier[v]) return;
      const auto nb = g.neighbors(v);
      const auto ids = g.incident_edges(v);
      for (std::size_t i = 0; i < nb.size(); ++i) {
        if (admits(filter, ids[i])) out.send(nb[i], Message{1, bits, {layer, 0, 0}, nullptr});
      }
    });
    ++layer;
    std::vector<Vertex> next;
    for (Vertex v = 0; v < n; ++v) {
      if (t.depth[v] != kUnreached) continue;
      const auto in = net.inbox(v);
      if (in.empty()) continue;
      Vertex best = in.front().from;
      for (const auto& m : in) best = std::min(best, m.from);
      t.depth[v] = layer;
      t.parent[v] = best;
      t.order.push_back(v);
      next.push_back(v);
    }
    t.height = layer;
    frontier = std::move(next);
  }
  net.clear_inboxes();
  for (Vertex v : t.order) {
    if (v != root) t.children[t.parent[v]].push_back(v);
  }
  for (auto& c : t.children) std::sort(c.begin(), c.end());
  return t;
}

// ---------------------------------------------------------------------------
// Convergecast / broadcast

void charge_tree_pass(Network& net, const BfsTree& tree, std::uint32_t bits) {
  // one message per non-root tree vertex, spread over height rounds (each round carries at least one)
  if (tree.height > 0) net.charge(tree.height, tree.size() - 1, bits);
}

std::vector<Words> convergecast(Network& net, const BfsTree& tree, std::vector<Words> values, const Combine& combine,
                                std::uint32_t bits) {
  const std::size_t n = net.size();
  if (!net.simulated()) {
    for (auto it = tree.order.rbegin(); it != tree.order.rend(); ++it) {
      const Vertex v = *it;
      for (Vertex c : tree.children[v]) values[v] = combine(values[v], values[c]);
    }
    charge_tree_pass(net, tree, bits);
    return values;
  }
  std::vector<std::uint32_t> pending(n, 0);
  std::vector<char> sent(n, 0);
  for (Vertex v : tree.order) pending[v] = static_cast<std::uint32_t>(tree.children[v].size());
  net.clear_inboxes();
  while (pending[tree.root] > 0) {
    net.run_round([&](Vertex v, std::span<const Incoming>, Outbox& out) {
      if (!tree.contains(v) || v == tree.root || sent[v] || pending[v] > 0) return;
      sent[v] = 1;
      out.send(tree.parent[v], Message{2, bits, values[v], nullptr});
    });
    for (Vertex v : tree.order) {
      for (const auto& m : net.inbox(v)) {
        values[v] = combine(values[v], m.msg.w);
        --pending[v];
      }
    }
  }
  net.clear_inboxes();
  return values;
}

std::vector<Words> broadcast(Network& net, const BfsTree& tree, const Words& value, std::uint32_t bits) {
  const std::size_t n = net.size();
  std::vector<Words> got(n, Words{});
  got[tree.root] = value;
  if (!net.simulated()) {
    for (Vertex v : tree.order) got[v] = value;
    charge_tree_pass(net, tree, bits);
    return got;
  }
  std::vector<char> has(n, 0);
  std::vector<char> forwarded(n, 0);
  has[tree.root] = 1;
  std::size_t reached = 1;
  net.clear_inboxes();
  while (reached < tree.size()) {
    net.run_round([&](Vertex v, std::span<const Incoming>, Outbox& out) {
      if (!has[v] || forwarded[v]) return;
      forwarded[v] = 1;
      for (Vertex c : tree.children[v]) out.send(c, Message{3, bits, got[v], nullptr});
    });
    for (Vertex v : tree.order) {
      for (const auto& m : net.inbox(v)) {
        got[v] = m.msg.w;
        if (!has[v]) ++reached;
        has[v] = 1;
      }
    }
  }
  net.clear_inboxes();
  return got;
}

std::vector<std::uint64_t> subtree_sums(Network& net, const BfsTree& tree, std::span<const std::uint64_t> values) {
  std::vector<Words> w(net.size(), Words{});
  for (Vertex v : tree.order) w[v][0] = values[v];
  auto folded = convergecast(
      net, tree, std::move(w), [](const Words& a, const Words& b) { return Words{a[0] + b[0], 0, 0}; }, 64);
  std::vector<std::uint64_t> out(net.size(), 0);
  for (Vertex v : tree.order) out[v] = folded[v][0];
  return out;
}

std::uint64_t tree_sum(Network& net, const BfsTree& tree, std::span<const std::uint64_t> values) {
  return subtree_sums(net, tree, values)[tree.root];
}

std::uint64_t tree_max(Network& net, const BfsTree& tree, std::span<const std::uint64_t> values) {
  std::vector<Words> w(net.size(), Words{});
  for (Vertex v : tree.order) w[v][0] = values[v];
  auto folded = convergecast(
      net, tree, std::move(w), [](const Words& a, const Words& b) { return Words{std::max(a[0], b[0]), 0, 0}; },
      64);
  return folded[tree.root][0];
}

std::vector<std::uint64_t> broadcast_value(Network& net, const BfsTree& tree, std::uint64_t value) {
  auto got = broadcast(net, tree, Words{value, 0, 0}, 64);
  std::vector<std::uint64_t> out(net.size(), 0);
  for (Vertex v : tree.order) out[v] = got[v][0];
  return out;
}

// ---------------------------------------------------------------------------
// Token sampling

std::vector<Placement> sample_by_degree(Network& net, const BfsTree& tree, std::span<const std::uint64_t> weight,
                                        std::span<const std::uint64_t> counts, std::uint64_t seed) {
  const std::size_t n = net.size();
  const auto s = subtree_sums(net, tree, weight);
  std::vector<Placement> placed;
  if (s[tree.root] == 0) return placed;
  const std::uint32_t kinds = static_cast<std::uint32_t>(counts.size());
  const std::uint32_t bits = ceil_log2(kinds + 1) + 64;
  // queue[v] holds (child, b, count) batches waiting to be sent, one per child edge per round
  std::vector<std::vector<std::array<std::uint64_t, 3>>> queue(n);
  std::vector<std::vector<std::uint64_t>> arrived(n);
  auto settle = [&](Vertex v, std::uint32_t b, std::uint64_t count) {
    Rng rng = make_rng(seed, {tag(Stream::kTokenRouting), v, b});
    std::vector<std::uint64_t> to_child(tree.children[v].size(), 0);
    std::uint64_t stay = 0;
    for (std::uint64_t i = 0; i < count; ++i) {
      std::uint64_t x = uniform_int(rng, 0, s[v] - 1);
      if (x < weight[v]) {
        ++stay;
        continue;
      }
      x -= weight[v];
      for (std::size_t c = 0; c < tree.children[v].size(); ++c) {
        const Vertex u = tree.children[v][c];
        if (x < s[u]) {
          ++to_child[c];
          break;
        }
        x -= s[u];
      }
    }
    for (std::uint64_t i = 0; i < stay; ++i) placed.push_back({v, b});
    for (std::size_t c = 0; c < to_child.size(); ++c) {
      if (to_child[c] > 0) queue[v].push_back({tree.children[v][c], b, to_child[c]});
    }
  };
  for (std::uint32_t b = 1; b <= kinds; ++b) {
    if (counts[b - 1] > 0) settle(tree.root, b, counts[b - 1]);
  }
  auto busy = [&] {
    for (const auto& q : queue) {
      if (!q.empty()) return true;
    }
    return false;
  };
  net.clear_inboxes();
  while (busy()) {
    if (net.simulated()) {
      net.run_round([&](Vertex v, std::span<const Incoming>, Outbox& out) {
        auto& q = queue[v];
        std::vector<Vertex> used;
        for (auto it = q.begin(); it != q.end();) {
          const Vertex child = static_cast<Vertex>((*it)[0]);
          if (std::find(used.begin(), used.end(), child) != used.end()) {
            ++it;
            continue;
          }
          used.push_back(child);
          out.send(child, Message{4, bits, {(*it)[1], (*it)[2], 0}, nullptr});
          it = q.erase(it);
        }
      });
      for (Vertex v = 0; v < n; ++v) {
        for (const auto& m : net.inbox(v)) settle(v, static_cast<std::uint32_t>(m.msg.w[0]), m.msg.w[1]);
      }
    } else {
      std::vector<std::pair<Vertex, std::array<std::uint64_t, 3>>> moved;
      for (Vertex v = 0; v < n; ++v) {
        auto& q = queue[v];
        std::vector<Vertex> used;
        for (auto it = q.begin(); it != q.end();) {
          const Vertex child = static_cast<Vertex>((*it)[0]);
          if (std::find(used.begin(), used.end(), child) != used.end()) {
            ++it;
            continue;
          }
          used.push_back(child);
          moved.push_back({child, *it});
          it = q.erase(it);
        }
      }
      net.charge(1, moved.size(), bits);
      std::stable_sort(moved.begin(), moved.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      for (const auto& [child, item] : moved) settle(child, static_cast<std::uint32_t>(item[1]), item[2]);
    }
  }
  net.clear_inboxes();
  std::sort(placed.begin(), placed.end());
  return placed;
}

// ---------------------------------------------------------------------------
// Random binary search

bool sweep_before(const SearchKey& a, const SearchKey& b) {
  const unsigned __int128 lhs = static_cast<unsigned __int128>(a.mass) * b.deg;
  const unsigned __int128 rhs = static_cast<unsigned __int128>(b.mass) * a.deg;
  if (lhs != rhs) return lhs > rhs;
  return a.id < b.id;
}

namespace {

std::uint32_t key_bits(const Network& net) { return 64 + 2 * net.id_bits(); }

}  // namespace

void charge_search_iteration(Network& net, const BfsTree& tree, std::uint32_t sample_depth) {
  const std::uint64_t edges = tree.size() - 1;
  const std::uint64_t h = tree.height;
  const std::uint64_t kb = key_bits(net);
  // count, route, key up, key down, prefix sums up, decision down (one ledger record)
  const std::uint64_t bits = std::max<std::uint64_t>({net.id_bits(), kb, 64 + net.id_bits()});
  net.charge(5 * h + sample_depth, 5 * edges + sample_depth, bits);
}

void charge_search_final(Network& net, const BfsTree& tree) {
  net.charge(tree.height, tree.size() - 1, net.id_bits());
}

RankedSearch ranked_binary_search(std::size_t size, const std::function<bool(std::size_t)>& pred, Rng& rng) {
  RankedSearch r;
  std::size_t lo = 0;
  std::size_t hi = size;
  while (lo < hi) {
    const std::size_t i = static_cast<std::size_t>(uniform_int(rng, lo + 1, hi));
    r.probes.push_back(i);
    ++r.iterations;
    if (pred(i)) {
      lo = i;
    } else {
      hi = i - 1;
    }
  }
  r.index = lo;
  return r;
}

SweepIndex make_sweep_index(const BfsTree& tree, std::span<const char> in_universe, std::span<const SearchKey> keys,
                            std::span<const std::uint64_t> weights) {
  SweepIndex ix;
  for (Vertex v : tree.order) {
    if (in_universe[v]) ix.sorted.push_back(v);
  }
  std::sort(ix.sorted.begin(), ix.sorted.end(), [&](Vertex a, Vertex b) { return sweep_before(keys[a], keys[b]); });
  ix.prefix.assign(ix.sorted.size() + 1, 0);
  for (std::size_t i = 0; i < ix.sorted.size(); ++i) ix.prefix[i + 1] = ix.prefix[i] + weights[ix.sorted[i]];
  // pre-order positions: self, then children by id
  std::vector<std::uint32_t> pre(keys.size(), 0);
  std::vector<Vertex> stack{tree.root};
  std::uint32_t next = 0;
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    pre[v] = next++;
    for (auto it = tree.children[v].rbegin(); it != tree.children[v].rend(); ++it) stack.push_back(*it);
  }
  // densify to 0..size-1
  std::vector<std::uint32_t> by_pre(ix.sorted.size());
  std::iota(by_pre.begin(), by_pre.end(), 0u);
  std::sort(by_pre.begin(), by_pre.end(),
            [&](std::uint32_t a, std::uint32_t b) { return pre[ix.sorted[a]] < pre[ix.sorted[b]]; });
  ix.preorder.resize(ix.sorted.size());
  for (std::size_t i = 0; i < by_pre.size(); ++i) ix.preorder[by_pre[i]] = static_cast<std::uint32_t>(i);
  ix.build_levels();
  return ix;
}

void SweepIndex::build_levels() {
  const std::size_t size = preorder.size();
  bits_ = 0;
  while ((std::size_t{1} << bits_) < size) ++bits_;
  zeros_.assign(bits_, std::vector<std::uint32_t>(size + 1, 0));
  nzeros_.assign(bits_, 0);
  at_pre_.assign(size, 0);
  for (std::size_t i = 0; i < size; ++i) at_pre_[preorder[i]] = static_cast<std::uint32_t>(i);
  std::vector<std::uint32_t> cur = preorder;
  std::vector<std::uint32_t> next(size);
  for (std::uint32_t lv = 0; lv < bits_; ++lv) {
    const std::uint32_t bit = bits_ - 1 - lv;
    auto& z = zeros_[lv];
    for (std::size_t i = 0; i < size; ++i) z[i + 1] = z[i] + (((cur[i] >> bit) & 1u) == 0 ? 1 : 0);
    nzeros_[lv] = z[size];
    std::size_t zi = 0;
    std::size_t oi = nzeros_[lv];
    for (std::size_t i = 0; i < size; ++i) (((cur[i] >> bit) & 1u) == 0 ? next[zi++] : next[oi++]) = cur[i];
    cur.swap(next);
  }
}

std::size_t SweepIndex::kth_position(std::size_t l, std::size_t r, std::size_t k) const {
  std::uint32_t value = 0;
  for (std::uint32_t lv = 0; lv < bits_; ++lv) {
    const auto& z = zeros_[lv];
    const std::size_t zl = z[l];
    const std::size_t zr = z[r];
    if (k < zr - zl) {
      l = zl;
      r = zr;
    } else {
      k -= zr - zl;
      l = nzeros_[lv] + (l - zl);
      r = nzeros_[lv] + (r - zr);
      value |= 1u << (bits_ - 1 - lv);
    }
  }
  return at_pre_[value];
}

SearchResult random_binary_search_sorted(Network& net, const BfsTree& tree, const SweepIndex& ix,
                                         const PrefixPredicate& pred, Rng& rng) {
  // the simulator routes its r-th draw to the r-th in-range vertex in tree pre-order
  SearchResult result;
  std::size_t lo = 0;
  std::size_t hi = ix.sorted.size();
  while (lo < hi) {
    const std::uint64_t r = uniform_int(rng, 1, hi - lo);
    const std::size_t i = ix.kth_position(lo, hi, static_cast<std::size_t>(r - 1)) + 1;
    ++result.iterations;
    charge_search_iteration(net, tree, tree.depth[ix.sorted[i - 1]]);
    if (pred(i, ix.prefix[i])) {
      lo = i;
    } else {
      hi = i - 1;
    }
  }
  charge_search_final(net, tree);
  result.index = lo;
  result.prefix_weight = ix.prefix[lo];
  if (lo > 0) result.boundary = ix.sorted[lo - 1];
  return result;
}

SearchResult random_binary_search(Network& net, const BfsTree& tree, std::span<const char> in_universe,
                                  std::span<const SearchKey> keys, std::span<const std::uint64_t> weights,
                                  const PrefixPredicate& pred, Rng& rng) {
  const std::size_t n = net.size();
  SearchResult result;
  if (!net.simulated()) {
    return random_binary_search_sorted(net, tree, make_sweep_index(tree, in_universe, keys, weights), pred, rng);
  }

  std::optional<SearchKey> lo;  // exclusive lower bound (known true)
  std::optional<SearchKey> hi;  // exclusive upper bound (known false)
  auto in_range = [&](Vertex v) {
    if (!in_universe[v]) return false;
    if (lo && !sweep_before(*lo, keys[v])) return false;
    if (hi && !sweep_before(keys[v], *hi)) return false;
    return true;
  };
  const Combine add0 = [](const Words& a, const Words& b) { return Words{a[0] + b[0], a[1] + b[1], 0}; };
  const Combine pick = [](const Words& a, const Words& b) { return a[2] != 0 ? a : b; };
  const std::uint32_t kb = key_bits(net);
  while (true) {
    std::vector<Words> cnt(n, Words{});
    for (Vertex v : tree.order) cnt[v][0] = in_range(v) ? 1 : 0;
    cnt = convergecast(net, tree, std::move(cnt), add0, net.id_bits());
    const std::uint64_t total = cnt[tree.root][0];
    if (total == 0) break;
    ++result.iterations;
    // route the r-th in-range vertex (pre-order: self, then children by id)
    std::uint64_t r = uniform_int(rng, 1, total);
    Vertex at = tree.root;
    std::optional<Vertex> chosen;
    net.clear_inboxes();
    while (!chosen) {
      if (in_range(at)) {
        if (r == 1) {
          chosen = at;
          break;
        }
        --r;
      }
      Vertex next = at;
      for (Vertex c : tree.children[at]) {
        if (r <= cnt[c][0]) {
          next = c;
          break;
        }
        r -= cnt[c][0];
      }
      const Vertex from = at;
      const std::uint64_t carry = r;
      net.run_round([&](Vertex v, std::span<const Incoming>, Outbox& out) {
        if (v == from) out.send(next, Message{5, net.id_bits(), {carry, 0, 0}, nullptr});
      });
      at = next;
      r = net.inbox(at).front().msg.w[0];
    }
    net.clear_inboxes();
    const Vertex sel = *chosen;
    std::vector<Words> up(n, Words{});
    up[sel] = {keys[sel].mass, keys[sel].deg, std::uint64_t{sel} + 1};
    up = convergecast(net, tree, std::move(up), pick, kb);
    const Words key_w = up[tree.root];
    const SearchKey key{key_w[0], key_w[1], static_cast<Vertex>(key_w[2] - 1)};
    broadcast(net, tree, key_w, kb);
    std::vector<Words> pre(n, Words{});
    for (Vertex v : tree.order) {
      if (in_universe[v] && !sweep_before(key, keys[v])) pre[v] = {1, weights[v], 0};
    }
    pre = convergecast(net, tree, std::move(pre), add0, 64 + net.id_bits());
    const std::size_t rank = static_cast<std::size_t>(pre[tree.root][0]);
    const std::uint64_t weight = pre[tree.root][1];
    const bool ok = pred(rank, weight);
    broadcast(net, tree, Words{ok ? 1u : 0u, 0, 0}, 1);
    if (ok) {
      lo = key;
      result.index = rank;
      result.prefix_weight = weight;
      result.boundary = key.id;
    } else {
      hi = key;
    }
  }
  return result;
}

}  // namespace expdecomp
