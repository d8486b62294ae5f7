#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "expdecomp/congest.hpp"
#include "expdecomp/graph.hpp"
#include "expdecomp/sparse_cut.hpp"
#include "expdecomp/verify.hpp"

namespace expdecomp {

struct DecompParams {
  double epsilon = 0;
  std::uint32_t k = 1;
  std::size_t n = 0;
  std::uint64_t m = 0;
  std::uint64_t d = 1;  ///< smallest d with (1 - eps/12)^d 2 C(n,2) < 1
  double beta = 0;      ///< (eps/3)/d
  double c_h = 1;
  /// phi_0..phi_k; log2_phi keeps the ladder when the doubles underflow.
  std::vector<double> phi;
  std::vector<double> log2_phi;

  double phi_k() const { return phi.back(); }
};

/// Throws BadEpsilon unless 0 < eps < 1 and k >= 1.
DecompParams derive_decomp_params(std::size_t n, std::uint64_t m, double epsilon, std::uint32_t k, double c_h = 1.0);

struct DecompConfig {
  SparseCutConfig cut;
  NetworkConfig network;
  double c_h = 1.0;
  /// Sampling constant K of the low-diameter decomposition.
  double lowdiam_K = 10.0;
  /// Components of at most this volume are finalized after an oracle check.
  std::uint64_t small_volume = 8;
  /// Attach verification evidence to the result.
  bool verify = true;
  VerifyOptions verify_options;
};

enum class Channel : std::uint8_t { kRemove1 = 1, kRemove2 = 2, kRemove3 = 3 };

struct RemovedEdge {
  Edge edge;
  Channel channel = Channel::kRemove1;
};

/// Structural counters checked against the bounds of the analysis.
struct DecompStats {
  std::uint64_t depth_max = 0;          ///< Phase-1 recursion depth (root = 0)
  std::uint32_t level_max = 0;          ///< largest Phase-2 level reached
  std::uint64_t level_iterations_max = 0;
  double tau_min = 0;                   ///< smallest 2 tau bound met (for the iteration check)
  bool level_volume_ok = true;          ///< cumulative Vol of removed C at levels >= i stays <= m_i
  std::uint64_t sparse_cut_calls = 0;
  std::uint64_t partition_overlap_max = 0;  ///< largest participation among non-None ParallelNibble outputs
  std::uint64_t partition_w_min = 0;        ///< smallest w among those calls
  bool overlap_ok = true;
  bool partition_bounds_ok = true;  ///< Vol(C) <= 47/48 Vol, Phi(C) <= K_Phi phi log2 n, pieces disjoint
  std::uint64_t phase2_components = 0;
  std::uint64_t small_finalized = 0;
};

struct Decomposition {
  DecompParams params;
  std::vector<std::vector<Vertex>> components;  ///< connected parts of the remaining edges, sorted
  std::vector<RemovedEdge> removed;
  std::array<std::uint64_t, 3> removed_by_channel{};
  std::uint64_t edges = 0;
  bool budget_ok = false;                       ///< total removed <= eps |E|
  std::array<bool, 3> channel_budget_ok{};      ///< each channel <= (eps/3)|E|
  DecompStats stats;
  RoundLedger ledger;
  VerifyReport verification;
  std::uint64_t seed = 0;

  double removed_fraction() const;
};

/// Phase 1 then Phase 2 on net.graph(). Structural violations throw DepthExceeded, LevelOverflow
/// or IterationOverflow.
Decomposition expander_decomposition(Network& net, double epsilon, std::uint32_t k, std::uint64_t seed,
                                     const DecompConfig& cfg = {});

/// Deterministic JSON of a decomposition (components, removed counts, parameters, constants, rounds, seed).
std::string decomposition_json(const Decomposition& d, const DecompConfig& cfg);

/// Checks a partition result against the hard bounds (volume, conductance, disjointness).
bool partition_bounds_hold(const Graph& g, const PartitionResult& r, double k_phi);

}  // namespace expdecomp
