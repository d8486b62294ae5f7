#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "expdecomp/congest.hpp"
#include "expdecomp/graph.hpp"
#include "expdecomp/walks.hpp"

namespace expdecomp {

/// Tunables of the Nibble family. Defaults are the desk profile.
struct SparseCutConfig {
  Profile profile = Profile::kDesk;
  WalkConstants constants = WalkConstants::desk();
  /// Desk profile: g = 1, so Partition runs s = 4 ceil(log_{7/4}(1/p)) iterations.
  bool desk_g = true;
  /// Clamp of the internal phi' used by nearly_balanced_sparse_cut (desk profile).
  double phi_floor = 0.05;
  double phi_ceiling = 1.0 / 12.0;
  /// h(theta) = c_h theta^{1/3} (log2 n)^{5/3}
  double c_h = 1.0;
  /// Partition bound Phi(C) <= k_phi phi log2 |V| (276 * 47 * 24).
  double k_phi = 311328.0;
  /// Failure probability of Partition; 0 means 1/n^2.
  double p = 0.0;
  /// Stop a walk once its state repeats one of the last kMaxPeriod states.
  bool stop_at_cycle = true;
  /// Reuse nibble results for a repeated (W, v, b) within one Partition.
  bool cache = true;
};

/// Parameters of one ParallelNibble call on G{W}.
struct ParallelNibbleParams {
  std::uint64_t k = 1;
  std::uint64_t w = 10;
  std::uint64_t vol = 0;  ///< Vol(W); z = (23/24) vol
  double g = 1;
  std::uint64_t s = 1;

  bool within_z(std::uint64_t v) const { return 24 * v <= 23 * vol; }
};

ParallelNibbleParams derive_parallel_params(const NibbleParams& np, std::uint64_t vol_w, std::uint64_t vol_v,
                                            double p, const SparseCutConfig& cfg);

/// j_1 = 1, j_i = max(j_{i-1} + 1, max{j : Vol(1..j) <= (1+phi) Vol(1..j_{i-1})}) up to j_max.
/// prefix_volume has j_max + 1 entries (prefix_volume[0] = 0). Indices are 1-based.
std::vector<std::size_t> jx_sequence(std::span<const std::uint64_t> prefix_volume, double phi);

/// Pr[b = i] = 2^{-i} / (1 - 2^{-ell}), i = 1..ell.
std::uint32_t sample_level(Rng& rng, std::uint32_t ell);

struct NibbleOutcome {
  std::optional<Cut> cut;        ///< statistics in the walk graph
  std::uint64_t t = 0;           ///< step of the hit (or last step run)
  std::size_t j = 0;             ///< prefix length of the hit
  bool starred = false;          ///< hit via C.1*-C.3*
  std::vector<char> ever_positive;  ///< vertices with positive mass at some step run
  std::uint64_t steps = 0;
  std::uint32_t period = 0;  ///< period of the repeated state that ended the walk, 0 if none
};

struct NibbleOptions {
  bool stop_at_cycle = true;
  std::uint64_t search_seed = 0;
};

/// Centralized Nibble: first (t, j) meeting C.1-C.3, scanning every j.
NibbleOutcome nibble(const Graph& g, Vertex v, const NibbleParams& params, std::uint32_t b,
                     const NibbleOptions& opt = {});

/// Centralized ApproximateNibble over the j_x schedule (reference for the distributed run).
NibbleOutcome approximate_nibble_reference(const Graph& g, Vertex v, const NibbleParams& params, std::uint32_t b,
                                           const NibbleOptions& opt = {});

/**
 * Distributed ApproximateNibble on the walk graph g (host ids, edges are host
 * edges). The walk, the spanning tree of P*, the random binary searches and the
 * condition checks are all ledger-charged.
 */
NibbleOutcome approximate_nibble(Network& net, const Graph& g, Vertex v, const NibbleParams& params,
                                 std::uint32_t b, const NibbleOptions& opt = {});

struct Instance {
  Vertex v = 0;
  std::uint32_t b = 1;
  std::uint64_t id = 0;
  std::optional<Cut> cut;
};

struct ParallelNibbleResult {
  std::optional<std::vector<Vertex>> cut;  ///< U_{i*} (sorted), nullopt for the empty output
  std::vector<Instance> instances;         ///< in the random-id order
  std::uint64_t max_participation = 0;
  bool overlap_abort = false;
  std::size_t i_star = 0;  ///< 1-based, 0 if none
  ParallelNibbleParams params;
};

/// Nibble results of one W (same W, v, b and search stream give the same outcome and charges).
struct NibbleCache {
  struct Entry {
    NibbleOutcome outcome;
    RoundLedger ledger;
  };
  std::uint64_t version = 0;
  std::uint64_t search_seed = 0;
  std::uint64_t hits = 0;
  std::map<std::pair<Vertex, std::uint32_t>, Entry> entries;

  void reset() {
    ++version;
    entries.clear();
  }
};

/// ParallelNibble on the walk graph G{W} (host ids, W = vertices of positive degree); host = net.graph().
/// vol_v is the volume of the Partition input (it sets g).
ParallelNibbleResult parallel_nibble(Network& net, const BfsTree& host_tree, const Graph& working, std::uint64_t vol_v, const NibbleParams& params,
                                     const SparseCutConfig& cfg, std::uint64_t seed, NibbleCache* cache = nullptr,
                                     std::uint64_t k_override = 0);

/// A single RandomNibble: v ~ psi_W, b ~ truncated geometric.
Instance random_nibble(Network& net, const BfsTree& host_tree, const Graph& working, const NibbleParams& params,
                       const SparseCutConfig& cfg, std::uint64_t seed);

struct PartitionResult {
  std::vector<Vertex> members;               ///< C, sorted
  std::vector<std::vector<Vertex>> pieces;   ///< C_1..C_i', pairwise disjoint
  std::uint64_t iterations = 0;
  std::uint64_t s = 0;
  std::uint64_t vol_total = 0;
  std::uint64_t vol_c = 0;
  std::uint64_t boundary = 0;
  std::uint64_t max_overlap_nonempty = 0;  ///< largest participation among non-None ParallelNibble outputs
  std::uint64_t w_max = 0;
  std::uint64_t overlap_aborts = 0;
  std::uint64_t nibble_calls = 0;
  std::uint64_t cache_hits = 0;
  double phi = 0;
};

/// Partition(G, phi, p) with G = net.graph(), which must be connected (Disconnected otherwise).
PartitionResult partition(Network& net, double phi, double p, const SparseCutConfig& cfg, std::uint64_t seed);
/// Same on the walk graph g (host ids, host edges, possibly disconnected); net.graph() carries the messages.
PartitionResult partition(Network& net, const Graph& g, double phi, double p, const SparseCutConfig& cfg,
                          std::uint64_t seed);

/// h(theta) = c_h theta^{1/3} (log2 n)^{5/3} and its inverse.
double h_bound(double theta, std::size_t n, double c_h);
double h_inverse(double x, std::size_t n, double c_h);

/// phi' with f(phi') = phi_target, clamped per profile.
double internal_phi(double phi_target, std::uint64_t m, const SparseCutConfig& cfg);

struct SparseCutResult {
  std::optional<Cut> cut;
  double phi_target = 0;
  double phi_internal = 0;
  double p = 0;
  double h_value = 0;
  PartitionResult partition;
};

/// Sparse cut for a target conductance: Partition at phi' = f^-1(phi_target).
/// Throws BadPhi for phi_target <= 0 or above the paper-profile cap.
SparseCutResult nearly_balanced_sparse_cut(Network& net, double phi_target, const SparseCutConfig& cfg,
                                           std::uint64_t seed);
SparseCutResult nearly_balanced_sparse_cut(Network& net, const Graph& g, double phi_target,
                                           const SparseCutConfig& cfg, std::uint64_t seed);

}  // namespace expdecomp
