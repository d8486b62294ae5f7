#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "expdecomp/graph.hpp"
#include "expdecomp/rng.hpp"

namespace expdecomp {

/**
 * Simulated: every protocol runs message by message through run_round.
 * Accounted: the heavy walk/sweep protocols compute centrally with the same
 * arithmetic and charge the rounds/messages their message-level version uses.
 */
enum class ExecutionMode { kSimulated, kAccounted };

struct NetworkConfig {
  /// bandwidth = factor * ceil(log2(n + 1)) bits per directed edge per round
  std::uint32_t bandwidth_factor = 64;
  ExecutionMode mode = ExecutionMode::kSimulated;
  unsigned threads = 1;
  /// Fewest vertices a worker thread takes in a round; smaller rounds run on the calling thread.
  std::size_t min_chunk = 512;
};

/// Phase-labelled round/message counters.
class RoundLedger {
 public:
  struct Counters {
    std::uint64_t rounds = 0;
    std::uint64_t messages = 0;
    std::uint64_t max_bits = 0;
    friend bool operator==(const Counters&, const Counters&) = default;
  };
  struct Entry {
    std::string phase;
    Counters counters;
    friend bool operator==(const Entry&, const Entry&) = default;
  };

  class Scope {
   public:
    Scope(RoundLedger& ledger, std::string phase) : ledger_(ledger), saved_(ledger.phase()) {
      ledger_.set_phase(std::move(phase));
    }
    ~Scope() { ledger_.set_phase(std::move(saved_)); }
    Scope(const Scope&) = delete;
    Scope& operator=(const Scope&) = delete;

   private:
    RoundLedger& ledger_;
    std::string saved_;
  };

  const std::string& phase() const { return phase_; }
  void set_phase(std::string phase);

  void record(std::uint64_t rounds, std::uint64_t messages, std::uint64_t max_bits);
  void record(const std::string& phase, const Counters& c);

  Counters totals() const;
  Counters phase_totals(const std::string& phase) const;
  const std::vector<Entry>& entries() const { return entries_; }

  /// Sequential composition: counters add.
  void append(const RoundLedger& other);
  /// Parallel composition: per phase, rounds take the maximum (times congestion), messages add.
  void append_parallel(std::span<const RoundLedger> parts, std::uint64_t congestion = 1);

  /// [{"phase": str, "rounds": int, "messages": int, "max_bits": int}, ...]
  std::string to_json() const;

  friend bool operator==(const RoundLedger& a, const RoundLedger& b) { return a.entries_ == b.entries_; }

 private:
  Counters& slot(const std::string& phase);

  std::string phase_ = "default";
  std::size_t current_ = static_cast<std::size_t>(-1);
  std::vector<Entry> entries_;
};

struct Message {
  std::uint32_t kind = 0;
  std::uint32_t bits = 0;
  std::array<std::uint64_t, 3> w{};
  /// Payload for framed rounds (lists larger than one message).
  std::shared_ptr<const std::vector<std::uint64_t>> bulk;
};

struct Incoming {
  Vertex from = 0;
  Message msg;
};

class Network;

/// Send handle given to a vertex step function.
class Outbox {
 public:
  Outbox(std::vector<std::pair<Vertex, Message>>& out, Vertex self) : out_(out), self_(self) {}
  void send(Vertex to, Message m) { out_.emplace_back(to, std::move(m)); }
  Vertex self() const { return self_; }

 private:
  std::vector<std::pair<Vertex, Message>>& out_;
  Vertex self_;
};

/// Synchronous CONGEST network over a host graph. Self loops are not links.
class Network {
 public:
  explicit Network(Graph host, NetworkConfig cfg = {});

  const Graph& graph() const { return graph_; }
  std::size_t size() const { return graph_.num_vertices(); }
  const NetworkConfig& config() const { return cfg_; }
  bool simulated() const { return cfg_.mode == ExecutionMode::kSimulated; }
  std::uint64_t bandwidth_bits() const { return bandwidth_; }
  /// ceil(log2(n + 1)): bits of a vertex id or of a count bounded by n.
  std::uint32_t id_bits() const { return id_bits_; }
  std::uint64_t round() const { return round_; }
  RoundLedger& ledger() { return ledger_; }
  const RoundLedger& ledger() const { return ledger_; }

  /**
   * One synchronous round. step(v, inbox, outbox) sees only the messages
   * delivered at the end of the previous round. Throws BandwidthExceeded when
   * the messages on one directed edge exceed the budget.
   */
  template <class Step>
  void run_round(Step&& step) {
    execute(step);
    deliver(false);
  }

  /// Like run_round, but payloads may exceed the budget; they are split into
  /// frames and the round costs the largest frame count over all edges.
  template <class Step>
  void run_framed_round(Step&& step) {
    execute(step);
    deliver(true);
  }

  std::span<const Incoming> inbox(Vertex v) const { return inbox_[v]; }
  void clear_inboxes();

  /// Analytic charge into the current ledger phase.
  void charge(std::uint64_t rounds, std::uint64_t messages, std::uint64_t max_bits);

 private:
  template <class Step>
  void execute(Step& step) {
    const std::size_t n = size();
    const unsigned threads = std::max(1u, cfg_.threads);
    auto run_range = [&](std::size_t lo, std::size_t hi) {
      for (std::size_t v = lo; v < hi; ++v) {
        Outbox out(outbox_[v], static_cast<Vertex>(v));
        step(static_cast<Vertex>(v), std::span<const Incoming>(inbox_[v]), out);
      }
    };
    const std::size_t chunk = std::max<std::size_t>({(n + threads - 1) / threads, cfg_.min_chunk, 1});
    if (threads == 1 || chunk >= n) {
      run_range(0, n);
      return;
    }
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      const std::size_t lo = t * chunk;
      const std::size_t hi = std::min(n, lo + chunk);
      if (lo < hi) pool.emplace_back(run_range, lo, hi);
    }
    for (auto& th : pool) th.join();
  }
  void deliver(bool framed);

  Graph graph_;
  NetworkConfig cfg_;
  std::uint64_t bandwidth_ = 0;
  std::uint32_t id_bits_ = 1;
  std::uint64_t round_ = 0;
  RoundLedger ledger_;
  std::vector<std::vector<Incoming>> inbox_;
  std::vector<std::vector<std::pair<Vertex, Message>>> outbox_;
};

std::uint32_t ceil_log2(std::uint64_t x);

// ---------------------------------------------------------------------------
// Tree primitives

struct BfsTree {
  Vertex root = 0;
  std::vector<Vertex> parent;  ///< kUnreached outside the tree; root is its own parent
  std::vector<std::uint32_t> depth;
  std::vector<std::vector<Vertex>> children;  ///< ascending ids
  std::vector<Vertex> order;                  ///< BFS order
  std::uint32_t height = 0;

  bool contains(Vertex v) const { return depth[v] != kUnreached; }
  std::size_t size() const { return order.size(); }
};

/// Host edge filter; an empty function admits every edge.
using EdgeFilter = std::function<bool(EdgeId)>;

/// BFS tree; parent = smallest-id neighbor one layer up. Rounds charged = eccentricity of root.
BfsTree bfs_tree(Network& net, Vertex root, const EdgeFilter& filter = {});
/// The same tree computed centrally without charging (oracle and accounted helper).
BfsTree bfs_tree_central(const Graph& g, Vertex root, const EdgeFilter& filter = {});
/// Charges exactly what bfs_tree's message-level run costs for this tree.
void charge_bfs(Network& net, const BfsTree& tree, const EdgeFilter& filter = {});

using Words = std::array<std::uint64_t, 3>;

/// Charges of one convergecast or broadcast of `bits`-bit values over the tree.
void charge_tree_pass(Network& net, const BfsTree& tree, std::uint32_t bits);
using Combine = std::function<Words(const Words&, const Words&)>;

/// Bottom-up fold; returns the fold of every subtree (root entry = total). Rounds = height.
std::vector<Words> convergecast(Network& net, const BfsTree& tree, std::vector<Words> values,
                                const Combine& combine, std::uint32_t bits);
/// Top-down copy of the root value to every tree vertex. Rounds = height.
std::vector<Words> broadcast(Network& net, const BfsTree& tree, const Words& value, std::uint32_t bits);

/// Convenience: per-vertex subtree sums s(v) of the given values.
std::vector<std::uint64_t> subtree_sums(Network& net, const BfsTree& tree, std::span<const std::uint64_t> values);
std::uint64_t tree_sum(Network& net, const BfsTree& tree, std::span<const std::uint64_t> values);
std::uint64_t tree_max(Network& net, const BfsTree& tree, std::span<const std::uint64_t> values);
/// Broadcasts a single 64-bit value; returns the value seen at each tree vertex.
std::vector<std::uint64_t> broadcast_value(Network& net, const BfsTree& tree, std::uint64_t value);

/// An instance placement produced by token sampling.
struct Placement {
  Vertex vertex = 0;
  std::uint32_t b = 0;
  friend bool operator==(const Placement&, const Placement&) = default;
  friend auto operator<=>(const Placement&, const Placement&) = default;
};

/**
 * Routes counts[i-1] i-tokens from the root down the tree; each token lands on
 * v with probability weight(v)/total. Only (i, count) pairs cross edges.
 * Vertex randomness comes from streams keyed by (seed, vertex).
 */
std::vector<Placement> sample_by_degree(Network& net, const BfsTree& tree, std::span<const std::uint64_t> weight,
                                        std::span<const std::uint64_t> counts, std::uint64_t seed);

/// Key ordering the sweep: rho = mass/deg descending, id ascending on ties.
struct SearchKey {
  std::uint64_t mass = 0;
  std::uint64_t deg = 0;
  Vertex id = 0;
};
bool sweep_before(const SearchKey& a, const SearchKey& b);

struct SearchResult {
  std::size_t index = 0;  ///< largest rank with predicate true; 0 if none
  std::uint64_t prefix_weight = 0;
  std::optional<Vertex> boundary;
  std::uint32_t iterations = 0;
};

/// pred(rank, prefix_weight) must be monotone: true up to some rank, false after.
using PrefixPredicate = std::function<bool(std::size_t rank, std::uint64_t prefix_weight)>;

/**
 * Random binary search over the universe vertices (all in the tree) ordered by
 * sweep_before. Each iteration samples a uniform element of the open range by
 * tree traversal, learns its rank and prefix weight, and evaluates pred.
 */
SearchResult random_binary_search(Network& net, const BfsTree& tree, std::span<const char> in_universe,
                                  std::span<const SearchKey> keys, std::span<const std::uint64_t> weights,
                                  const PrefixPredicate& pred, Rng& rng);

/// Universe vertices in sweep order with prefix weights (prefix[i] = weight of the first i)
/// and the tree pre-order position of each.
struct SweepIndex {
  std::vector<Vertex> sorted;
  std::vector<std::uint64_t> prefix;
  std::vector<std::uint32_t> preorder;  ///< dense 0..size-1

  /// k-th smallest (0-based) preorder value among sorted positions [l, r): a wavelet matrix.
  std::size_t kth_position(std::size_t l, std::size_t r, std::size_t k) const;
  void build_levels();

 private:
  std::uint32_t bits_ = 0;
  std::vector<std::vector<std::uint32_t>> zeros_;  ///< per level: zero-bit prefix counts
  std::vector<std::uint32_t> nzeros_;
  std::vector<std::uint32_t> at_pre_;  ///< sorted position of each preorder value
};
SweepIndex make_sweep_index(const BfsTree& tree, std::span<const char> in_universe, std::span<const SearchKey> keys,
                            std::span<const std::uint64_t> weights);

/// Accounted form of random_binary_search over a prebuilt index: same draws, samples and charges.
SearchResult random_binary_search_sorted(Network& net, const BfsTree& tree, const SweepIndex& ix,
                                         const PrefixPredicate& pred, Rng& rng);

/// Rank-space form of the same search: samples uniform ranks in the open range.
struct RankedSearch {
  std::size_t index = 0;
  std::uint32_t iterations = 0;
  std::vector<std::size_t> probes;
};
RankedSearch ranked_binary_search(std::size_t size, const std::function<bool(std::size_t)>& pred, Rng& rng);

/// Ledger charges of one random_binary_search iteration whose sample sits at the given depth,
/// and of the final emptiness check.
void charge_search_iteration(Network& net, const BfsTree& tree, std::uint32_t sample_depth);
void charge_search_final(Network& net, const BfsTree& tree);

}  // namespace expdecomp
