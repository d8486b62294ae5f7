#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "expdecomp/graph.hpp"

namespace expdecomp {

struct VerifyOptions {
  /// Components up to this size get the exact conductance oracle.
  std::size_t oracle_max = 14;
  /// Walk length of the sweep falsifier; 0 picks 4 |V_i| + 16.
  std::size_t falsifier_steps = 0;
  /// Start vertices per component for the falsifier; 0 means all.
  std::size_t falsifier_starts = 0;
};

struct ComponentCheck {
  std::vector<Vertex> members;
  enum class Method { kSingleton, kOracle, kFalsifier } method = Method::kSingleton;
  bool pass = true;
  std::optional<Rational> phi_exact;  ///< oracle value
  double best_sweep = 1.0;             ///< smallest sweep conductance seen by the falsifier
};

const char* method_name(ComponentCheck::Method m);

struct VerifyReport {
  bool partition_ok = false;  ///< components partition V
  std::uint64_t inter_edges = 0;
  double inter_fraction = 0;
  bool fraction_ok = false;
  std::vector<ComponentCheck> components;
  bool pass = false;
};

/// Smallest sweep-prefix conductance over lazy walks from the chosen starts (proper prefixes only).
double sweep_falsifier(const Graph& g, std::size_t steps, std::size_t starts = 0);

ComponentCheck check_component(const Graph& g, std::vector<Vertex> members, double phi, const VerifyOptions& opt = {});

/// Recounts inter-component edges and checks every component's conductance against phi.
VerifyReport verify_decomposition(const Graph& g, const std::vector<std::vector<Vertex>>& components, double epsilon,
                                  double phi, const VerifyOptions& opt = {});

using Triangle = std::array<Vertex, 3>;

/// Every triple is an ascending triangle of g and no triple repeats.
bool verify_triangles(const Graph& g, const std::vector<Triangle>& triangles);

}  // namespace expdecomp
