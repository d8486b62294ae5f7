#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "expdecomp/errors.hpp"
#include "expdecomp/rational.hpp"

namespace expdecomp {

using Vertex = std::uint32_t;
using EdgeId = std::uint32_t;

inline constexpr std::uint32_t kUnreached = std::numeric_limits<std::uint32_t>::max();

/// Undirected simple edge, stored with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline Edge make_edge(Vertex a, Vertex b) { return a < b ? Edge{a, b} : Edge{b, a}; }

/**
 * Multigraph with simple edges plus per-vertex self-loop counts.
 *
 * deg(v) = |N(v)| + loops(v). The graph is immutable; edge removal returns a
 * new graph in which the removed edge became one self loop at each endpoint.
 */
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n);
  /// Throws std::invalid_argument on self loops, duplicates or endpoints out of range.
  Graph(std::size_t n, std::span<const Edge> edges, std::vector<std::uint32_t> loops = {});

  std::size_t num_vertices() const { return loops_.size(); }
  std::size_t num_edges() const { return edges_.size(); }

  std::span<const Vertex> neighbors(Vertex v) const {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  std::span<const EdgeId> incident_edges(Vertex v) const {
    return {edge_ids_.data() + offsets_[v], edge_ids_.data() + offsets_[v + 1]};
  }
  std::span<const Edge> edges() const { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_[e]; }

  std::uint32_t self_loops(Vertex v) const { return loops_[v]; }
  std::uint32_t simple_degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }
  std::uint64_t degree(Vertex v) const { return std::uint64_t{simple_degree(v)} + loops_[v]; }
  std::uint64_t total_volume() const { return volume_; }

  bool has_edge(Vertex u, Vertex v) const { return find_edge(u, v).has_value(); }
  std::optional<EdgeId> find_edge(Vertex u, Vertex v) const;

  /// Removes {u,v} and adds one self loop at each endpoint. Throws MissingEdge.
  Graph remove_edge_to_loops(Vertex u, Vertex v) const;
  /// Batch form of remove_edge_to_loops. Throws MissingEdge.
  Graph remove_edges_to_loops(std::span<const Edge> removed) const;

 private:
  std::vector<std::uint32_t> offsets_{0};
  std::vector<Vertex> targets_;
  std::vector<EdgeId> edge_ids_;
  std::vector<Edge> edges_;
  std::vector<std::uint32_t> loops_;
  std::uint64_t volume_ = 0;
};

/// Membership mask of a vertex subset.
std::vector<char> make_mask(std::size_t n, std::span<const Vertex> s);

std::uint64_t volume(const Graph& g, std::span<const Vertex> s);
std::uint64_t boundary_size(const Graph& g, std::span<const Vertex> s);
std::uint64_t boundary_size(const Graph& g, const std::vector<char>& mask);

/// A proper vertex subset with cached cut quantities.
struct Cut {
  std::vector<Vertex> members;  ///< sorted ascending
  std::uint64_t vol_s = 0;
  std::uint64_t vol_rest = 0;
  std::uint64_t boundary = 0;
  Rational conductance;
  Rational balance;
};

/// Exact cut statistics. A side of volume zero has conductance 0 (its boundary is empty).
/// Throws DegenerateCut for s = {} or s = V.
Cut cut_stats(const Graph& g, std::span<const Vertex> s);

/// Floating point conductance used on hot paths.
double conductance_value(std::uint64_t boundary, std::uint64_t vol_s, std::uint64_t vol_total);

/// G{S} relabeled to 0..|S|-1 together with the map back to the parent ids.
struct Subgraph {
  Graph graph;
  std::vector<Vertex> to_parent;
};

/// G{S}: the induced subgraph where each vertex keeps its degree through self loops.
Subgraph contract(const Graph& g, std::span<const Vertex> s);
/// G{S} kept in the parent id space; vertices outside S become isolated with degree 0.
Graph restrict_to(const Graph& g, std::span<const Vertex> s);
/// G[S] without self loops, relabeled.
Subgraph induced(const Graph& g, std::span<const Vertex> s);

struct ConductanceWitness {
  Rational phi;
  std::vector<Vertex> witness;
};

inline constexpr std::size_t kOracleMaxVertices = 16;

/// Exhaustive minimum conductance. Throws TooLarge when n > n_max, std::invalid_argument when n < 2.
ConductanceWitness min_conductance_oracle(const Graph& g, std::size_t n_max = kOracleMaxVertices);

/// Smallest t with max_v ||p_t^v - psi_V||_1 <= tol for the lazy walk. Throws Disconnected.
std::size_t mixing_time_estimate(const Graph& g, double tol, std::size_t max_steps = 1u << 22);

/// Component index per vertex (components numbered by smallest member) and the count.
struct Components {
  std::vector<std::uint32_t> label;
  std::size_t count = 0;
  std::vector<std::vector<Vertex>> groups() const;
};
Components connected_components(const Graph& g);

/// Same, restricted to the edges where keep(e) is true.
template <class Keep>
Components connected_components_if(const Graph& g, Keep&& keep);

std::vector<std::uint32_t> bfs_distances(const Graph& g, Vertex source);
/// Diameter of the (connected) graph; kUnreached when disconnected.
std::uint32_t diameter(const Graph& g);

void write_graph(std::ostream& os, const Graph& g);
/// Parses the `p <n> <m>` edge-list format. Throws ParseError.
Graph read_graph(std::istream& is);
Graph read_graph_file(const std::string& path);
void write_graph_file(const std::string& path, const Graph& g);

// ---------------------------------------------------------------------------

template <class Keep>
Components connected_components_if(const Graph& g, Keep&& keep) {
  const std::size_t n = g.num_vertices();
  Components c;
  c.label.assign(n, kUnreached);
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < n; ++s) {
    if (c.label[s] != kUnreached) continue;
    const auto id = static_cast<std::uint32_t>(c.count++);
    c.label[s] = id;
    stack.push_back(s);
    while (!stack.empty()) {
      const Vertex x = stack.back();
      stack.pop_back();
      const auto nb = g.neighbors(x);
      const auto ids = g.incident_edges(x);
      for (std::size_t i = 0; i < nb.size(); ++i) {
        if (c.label[nb[i]] != kUnreached || !keep(ids[i])) continue;
        c.label[nb[i]] = id;
        stack.push_back(nb[i]);
      }
    }
  }
  return c;
}

}  // namespace expdecomp
