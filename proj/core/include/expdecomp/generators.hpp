#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "expdecomp/graph.hpp"

namespace expdecomp {

Graph make_clique(std::size_t n);
Graph make_cycle(std::size_t n);
Graph make_path(std::size_t n);
Graph make_star(std::size_t n);  ///< center 0 and n-1 leaves
Graph make_grid(std::size_t rows, std::size_t cols);
/// Two K_c joined by `bridges` edges (i, c+i), i = 0..bridges-1.
Graph make_barbell(std::size_t c, std::size_t bridges = 1);
/// `count` copies of K_size in a row, consecutive copies joined by `bridges` edges.
Graph make_cliques_chain(std::size_t count, std::size_t size, std::size_t bridges = 1);
Graph make_erdos_renyi(std::size_t n, double p, std::uint64_t seed);
/// Configuration model with rejection of loops and multi-edges. Throws Infeasible.
Graph make_random_regular(std::size_t n, std::size_t r, std::uint64_t seed);
/// G(n, p) background with a clique on a seeded vertex subset of size c.
Graph make_planted_clique(std::size_t n, double p, std::size_t c, std::uint64_t seed);
/// K_c with a path of `tail` extra vertices hanging off vertex c-1.
Graph make_lollipop(std::size_t c, std::size_t tail);

struct GraphSpec {
  enum class Family {
    kClique,
    kCycle,
    kPath,
    kStar,
    kGrid,
    kBarbell,
    kCliquesChain,
    kErdosRenyi,
    kRandomRegular,
    kPlantedClique,
    kLollipop,
  };
  Family family = Family::kClique;
  std::size_t n = 0;      ///< vertices, clique size (barbell, chain), rows (grid)
  std::size_t a = 0;      ///< cols (grid), bridges, count (chain), degree (regular), clique size (planted), tail
  std::size_t b = 0;      ///< bridges (chain)
  double p = 0;
  std::uint64_t seed = 0;
};

Graph generate(const GraphSpec& spec);

/// Parses "clique:8", "grid:4x5", "barbell:12:1", "chain:3:8:1", "gnp:60:0.2", "regular:32:4",
/// "planted:60:0.1:10", "lollipop:8:20", "cycle:32", "path:64", "star:9". Throws ParseError.
GraphSpec parse_spec(const std::string& text, std::uint64_t seed = 0);
std::string spec_string(const GraphSpec& spec);

}  // namespace expdecomp
