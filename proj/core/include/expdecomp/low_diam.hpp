#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "expdecomp/congest.hpp"
#include "expdecomp/graph.hpp"

namespace expdecomp {

/// Exponential-shift clustering output. cluster[v] is the center of v's cluster.
struct Clustering {
  std::vector<Vertex> cluster;
  std::vector<Vertex> parent;  ///< join pointer; centers point to themselves
  std::vector<Vertex> centers;  ///< ascending
  std::uint32_t epochs = 0;

  std::vector<EdgeId> inter_cluster_edges(const Graph& g) const;
  std::vector<std::vector<Vertex>> groups() const;
  /// Diameter of G[cluster of center c].
  std::uint32_t cluster_diameter(const Graph& g, Vertex c) const;
  std::uint32_t max_diameter(const Graph& g) const;
};

/// ceil(2 log2 n / beta) with log2 n taken as at least 1.
std::uint32_t clustering_epochs(std::size_t n, double beta);

/**
 * Clustering(beta): delta_v ~ Exponential(rate beta), start_v = max(1, T - floor(delta_v)).
 * One round per epoch; ties join the smallest adjacent cluster label. forced_shifts
 * replaces the random draws (tests).
 */
Clustering exp_shift_clustering(Network& net, double beta, std::uint64_t seed,
                                const std::vector<double>* forced_shifts = nullptr);

/// E(N^d(v)) = edges with an endpoint at distance < d from v.
using EdgeMask = std::vector<char>;  ///< per host edge; empty means every edge

/// Per vertex: E(N^d(v)) ∩ E* when its size is <= tau, nullopt (over threshold) otherwise.
std::vector<std::optional<std::vector<EdgeId>>> neighborhood_edges_exact(Network& net, const EdgeMask& estar,
                                                                         std::uint32_t d, double tau);

struct ThresholdConfig {
  double K = 10.0;
  /// Seed key of the sampled edge set (same key gives the same E*).
  std::uint64_t sample_key = 0;
};

/// 1 if |E(N^d(v))| <= z, 0 if >= (1+f) z (w.h.p.); exact when K log n >= f^2 z.
std::vector<char> neighborhood_threshold_test(Network& net, std::uint32_t d, double z, double f,
                                              std::uint64_t seed, const ThresholdConfig& cfg = {});

struct SizeEstimate {
  std::vector<double> m;  ///< m_v
  std::uint32_t steps = 0;  ///< ladder steps run
};

/// m_v = smallest ladder value s_i = (1+f)^{i-1} whose threshold test outputs 1.
SizeEstimate neighborhood_size_estimate(Network& net, std::uint32_t d, double f, std::uint64_t seed,
                                        double K = 10.0);

struct DenseSparseSplit {
  double beta = 0;
  double K = 0;
  double f = 0;
  std::uint32_t a = 0;           ///< ceil(5 log2 n / beta)
  double b = 0;                  ///< K log2 n / beta
  std::uint32_t radius_a = 0;    ///< min(a, n)
  std::uint32_t radius_big = 0;  ///< min(100 a b, n)
  std::vector<double> est_a;
  std::vector<double> est_big;
  std::vector<char> dense_aux;  ///< V_D'
  std::vector<char> dense;      ///< V_D
  std::vector<std::vector<char>> history;  ///< W_0, W_1, ..., final
  std::uint32_t iterations = 0;            ///< merge iterations that changed W

  std::vector<std::vector<Vertex>> dense_components(const Graph& g) const;
};

DenseSparseSplit build_dense_sparse_split(Network& net, double beta, double K, double f, std::uint64_t seed);

/// Largest subset of candidates with pairwise distance > gap (exact branch and bound).
std::size_t max_separated_subset(const Graph& g, std::span<const Vertex> candidates, std::uint32_t gap);

struct HReport {
  bool h1 = false;
  bool h2 = false;
  bool h3 = false;
  std::size_t n_s = 0;
  std::uint32_t d_s = 0;
  bool ok() const { return h1 && h2 && h3; }
};

/// Checks invariant H for a vertex set S against the split's V_D', a and b (oracle).
HReport check_invariant_h(const Graph& g, const DenseSparseSplit& split, std::span<const Vertex> s);

struct LowDiamResult {
  DenseSparseSplit split;
  Clustering clustering;
  Components components;
  std::vector<EdgeId> cut_edges;
  std::uint32_t max_diameter = 0;
};

/// Split with beta/3, Clustering(beta/3), then cut the inter-cluster edges touching V_S.
LowDiamResult low_diam_decomposition(Network& net, double beta, double K, std::uint64_t seed, double f = 3.0 / 16.0);

}  // namespace expdecomp
