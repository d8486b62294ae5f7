#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "expdecomp/congest.hpp"
#include "expdecomp/graph.hpp"

namespace expdecomp {

enum class Profile { kPaper, kDesk };

/// Leading constants of t0, f, gamma and eps_b.
struct WalkConstants {
  double t0 = 4;
  double f = 8;
  double gamma = 8;
  double eps = 4;

  static WalkConstants paper() { return {49, 38416, 392, 56}; }
  static WalkConstants desk() { return {}; }
  static WalkConstants for_profile(Profile p) { return p == Profile::kPaper ? paper() : desk(); }
};

struct NibbleParams {
  std::uint64_t m = 1;
  double phi = 0;
  std::uint32_t ell = 1;
  std::uint64_t t0 = 1;
  double f_phi = 0;
  double gamma = 0;
  double eps_base = 0;  ///< eps_b = eps_base / 2^b
  Profile profile = Profile::kDesk;
  WalkConstants constants;

  double eps_b(std::uint32_t b) const { return std::ldexp(eps_base, -static_cast<int>(b)); }
  /// ln(m e^4)
  double ln_me4() const { return std::log(static_cast<double>(m)) + 4.0; }
};

/// Throws BadPhi unless 0 < phi <= 1.
NibbleParams derive_nibble_params(std::uint64_t m, double phi, Profile profile, const WalkConstants& constants);
NibbleParams derive_nibble_params(std::uint64_t m, double phi, Profile profile);

// ---------------------------------------------------------------------------
// Real-valued kernel (reference and oracles)

using Distribution = std::vector<double>;

Distribution indicator(std::size_t n, Vertex v);
Distribution stationary(const Graph& g);
/// p' = M p with M = (A D^-1 + I)/2; a self loop keeps its share at the vertex.
Distribution lazy_step(const Graph& g, const Distribution& p);
/// Keeps p(x) iff p(x) >= 2 eps deg(x).
Distribution truncate(const Graph& g, const Distribution& p, double eps);

// ---------------------------------------------------------------------------
// Fixed-point kernel (what crosses edges)

using Mass = std::uint64_t;
inline constexpr int kMassBits = 62;
inline constexpr Mass kMassOne = Mass{1} << kMassBits;

inline double mass_value(Mass x) { return std::ldexp(static_cast<double>(x), -kMassBits); }
/// Fixed-point truncation thresholds ceil(2 eps deg(v) 2^62), saturated.
std::vector<Mass> mass_thresholds(const Graph& g, double eps);

/**
 * Truncated lazy walk in 64-bit fixed point. Each vertex u with positive mass
 * sends floor(p(u) / 2deg(u)) along every simple edge and keeps the rest, so
 * mass moves exactly as in the distributed protocol.
 */
class FixedWalk {
 public:
  FixedWalk(const Graph& g, Vertex start, double eps);

  void step();

  std::uint64_t t() const { return t_; }
  const std::vector<Mass>& mass() const { return mass_; }
  /// Positive-mass vertices, ascending.
  const std::vector<Vertex>& support() const { return support_; }
  /// Messages the last step sent (one per simple edge of each sender).
  std::uint64_t last_messages() const { return last_messages_; }
  bool last_changed() const { return last_changed_; }
  /// P*: edges with an endpoint of positive mass at some step so far.
  const std::vector<char>& participants() const { return participants_; }
  std::size_t participant_count() const { return participant_count_; }
  bool truncated_any() const { return truncated_any_; }

 private:
  void mark(Vertex v);

  const Graph* g_;
  std::vector<Mass> threshold_;
  std::vector<Mass> mass_;
  std::vector<Mass> next_;
  std::vector<Vertex> support_;
  std::vector<Vertex> touched_;
  std::vector<char> in_touched_;
  std::vector<char> participants_;
  std::size_t participant_count_ = 0;
  std::uint64_t t_ = 0;
  std::uint64_t last_messages_ = 0;
  bool last_changed_ = true;
  bool truncated_any_ = false;
};

/// One message-level walk step: every positive-mass vertex sends its share on each simple edge, then truncates.
/// Returns true when some mass changed.
bool simulated_walk_step(Network& net, const Graph& g, std::vector<Mass>& mass, const std::vector<Mass>& thresholds);

/// Longest walk period the cycle stop looks for.
inline constexpr std::uint32_t kMaxPeriod = 64;

/**
 * The last kMaxPeriod walk states. A state equal to the one P steps earlier
 * repeats with period P forever, so a scan that already failed on every state
 * of the cycle fails on all later steps.
 */
class StateHistory {
 public:
  /// Smallest P <= kMaxPeriod with cur == state(t - P) and t - P >= 1; 0 if none.
  std::uint32_t period(const std::vector<Mass>& cur, std::uint64_t t) const;
  /// Bit P-1 set when v's mass differs from its mass at t - P (or t - P < 1). Local to v.
  std::uint64_t diff_mask(Vertex v, const std::vector<Mass>& cur, std::uint64_t t) const;
  void push(const std::vector<Mass>& cur, std::uint64_t t);

 private:
  struct Entry {
    std::uint64_t t = 0;
    std::uint64_t hash = 0;
    std::vector<Mass> mass;
  };
  const Entry* at(std::uint64_t t) const;

  std::vector<Entry> ring_{kMaxPeriod};
};

std::uint64_t mass_hash(const std::vector<Mass>& m);

struct TruncatedWalkState {
  std::uint64_t t = 0;
  std::vector<Mass> mass;
  double epsilon = 0;
  std::vector<char> participants;  ///< per edge of the walk graph

  double rho(const Graph& g, Vertex v) const { return mass_value(mass[v]) / static_cast<double>(g.degree(v)); }
};

/**
 * Distributed truncated walk from v for t = 0..t0 on the walk graph g (same
 * vertex ids as the network host; its edges must be host edges). One ledger
 * round per step. In accounted mode the same states are computed centrally.
 */
std::vector<TruncatedWalkState> run_truncated_walk(Network& net, const Graph& g, Vertex v, const NibbleParams& params,
                                                   std::uint32_t b);

struct SweepOrder {
  std::vector<Vertex> order;                 ///< positive-mass vertices
  std::vector<std::uint64_t> prefix_volume;  ///< prefix_volume[j] = Vol(order[0..j)), size order.size()+1
};

/// Positive-mass vertices by rho descending, id ascending on ties.
SweepOrder sweep_order(const Graph& g, const std::vector<Mass>& mass, std::span<const Vertex> support);
SweepOrder sweep_order(const Graph& g, const TruncatedWalkState& state);

/// Z_{u,phi,b} = {v : rho_t^v(u) >= eps_b for some t in [0, t0]} with untruncated walks. Throws TooLarge for n > 64.
std::vector<Vertex> z_set(const Graph& g, Vertex u, const NibbleParams& params, std::uint32_t b);

}  // namespace expdecomp
