#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "expdecomp/congest.hpp"
#include "expdecomp/expander_decomp.hpp"
#include "expdecomp/graph.hpp"
#include "expdecomp/verify.hpp"

namespace expdecomp {

/// Exact triangle list (ascending triples, sorted). Throws TooLarge for n > 2000.
std::vector<Triangle> brute_force_triangles(const Graph& g);

/// Router cost model: a batch on component V_i costs c_r * tau_mix(V_i) * (log2 n)^c_q rounds.
struct RouterModel {
  double c_r = 1.0;
  double c_q = 1.0;
  double mix_tol = 0.25;
};

struct ComponentEnumeration {
  std::vector<Triangle> triangles;  ///< every triangle of g with an edge inside the component
  std::vector<Vertex> reporters;    ///< reporter per triangle
  std::uint32_t buckets = 0;
  std::uint64_t triples = 0;
  std::uint64_t batches = 0;  ///< max over vertices of ceil(received edges / deg)
  std::uint64_t delivered = 0;
};

/// Bucket-triple enumeration on the component (vertex ids of g). label[v] is v's component.
ComponentEnumeration enumerate_component(const Graph& g, std::span<const Vertex> component,
                                         std::span<const std::uint32_t> label);

struct RouterEntry {
  std::uint32_t level = 0;
  std::size_t size = 0;
  std::size_t tau_mix = 0;
  std::uint64_t batches = 0;
  double rounds = 0;
};

struct TriangleConfig {
  DecompConfig decomp;
  RouterModel router;
  std::uint32_t max_levels = 64;
};

struct TriangleResult {
  std::vector<Triangle> triangles;  ///< sorted, unique
  std::vector<Vertex> reporters;
  std::uint32_t levels = 0;
  std::vector<std::uint64_t> level_edges;  ///< |E| entering each level
  std::vector<RouterEntry> router;
  std::uint64_t fallback_levels = 0;  ///< levels that removed every edge and were enumerated whole
  std::vector<bool> level_budget_ok;
  double rounds_charged = 0;
};

/// Decompose, enumerate per component, recurse on the inter-component edges until none remain.
TriangleResult triangle_enumeration(Network& net, double epsilon, std::uint32_t k, std::uint64_t seed,
                                    const TriangleConfig& cfg = {});

struct RouterLevelSummary {
  std::uint32_t level = 0;
  std::size_t components = 0;
  std::size_t tau_mix_max = 0;
  std::uint64_t batches = 0;
  double rounds = 0;
};

std::vector<RouterLevelSummary> router_cost_report(const TriangleResult& r);

}  // namespace expdecomp
