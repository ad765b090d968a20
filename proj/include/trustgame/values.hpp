#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "trustgame/coalition.hpp"
#include "trustgame/graph.hpp"

namespace trustgame {

// A payoff vector over all players. `efficient` records whether the
// payoffs sum to the reference total (v(N), or v(S) for subgame vectors)
// within tolerance; it is computed, never assumed.
struct Allocation {
  enum class Kind { shapley, banzhaf, core, subgame };

  Kind kind = Kind::shapley;
  std::vector<double> payoffs;
  double payoff_sum = 0.0;
  bool efficient = false;
};

const char* allocation_kind_name(Allocation::Kind kind);

// Closed-form Shapley value, O(E log E):
//   phi_i = (incoming + outgoing weight of i) / 2
//         + own chain term: sum_t (w_i(t) - w_i(t-1))/t  -  w_i(m_i)/(m_i+1)
//         + for each out-neighbor j, the tail of j's chain past i's rank:
//           sum_{t > r_j(i)} (w_j(t) - w_j(t-1))/t  -  w_j(m_j)/(m_j+1).
Allocation shapley_closed_form(const WeightedDigraph& g);

// Closed-form Banzhaf value; same shape with divisor 2^(t-1) and
// correction w(m)/2^m. Not efficient in general.
Allocation banzhaf_closed_form(const WeightedDigraph& g);

inline constexpr int kDefaultBruteForceGuard = 12;

// Definitional oracles: subset-weighted marginal contributions over all
// 2^n coalitions, independent of the closed-form path.
Allocation shapley_bruteforce(const WeightedDigraph& g,
                              int max_n = kDefaultBruteForceGuard);
Allocation banzhaf_bruteforce(const WeightedDigraph& g,
                              int max_n = kDefaultBruteForceGuard);

// The same definitional solvers over an arbitrary characteristic function
// given by bitmask (value(0) must be 0). Useful for checking known values
// of hand-built games.
std::vector<double> shapley_of_game(int n,
                                    const std::function<double(std::uint64_t)>& value);
std::vector<double> banzhaf_of_game(int n,
                                    const std::function<double(std::uint64_t)>& value);

// Open interval of weight perturbations that keeps every in-neighbor rank
// unchanged and the perturbed weight inside [0, 1]. Degenerates to an
// empty/half-empty interval at exact weight ties.
struct EpsilonWindow {
  double lo = 0.0;
  double hi = 0.0;
};

// Exact slope of a value operator in one edge weight, split into the
// internal and external contributions. The slope is valid for any
// perturbation inside the window; ranks change outside it.
struct MarginalEffectReport {
  PlayerId edge_from = 0;
  PlayerId edge_to = 0;
  PlayerId target = 0;
  ValueKind method = ValueKind::shapley;
  double internal_coeff = 0.0;
  double external_coeff = 0.0;
  double total_coeff = 0.0;
  // Rank of the perturbed edge in the head's in-neighbor profile; every
  // nonzero coefficient is a function of this rank.
  int rank_used = 0;
  EpsilonWindow valid_epsilon_window;
};

MarginalEffectReport marginal_effect_shapley(const WeightedDigraph& g, PlayerId from,
                                             PlayerId to, PlayerId target);
MarginalEffectReport marginal_effect_banzhaf(const WeightedDigraph& g, PlayerId from,
                                             PlayerId to, PlayerId target);

// One edge swept over a weight grid: target values per grid point, plus
// detected breakpoints (the head's other in-edge weights) and fitted
// per-segment slopes. Values are piecewise linear in the weight with
// breakpoints exactly at those weights. Grid points that tie another
// in-edge weight are flagged; ranks there follow the id tie-break.
struct SweepTable {
  PlayerId edge_from = 0;
  PlayerId edge_to = 0;
  ValueKind method = ValueKind::shapley;
  std::vector<PlayerId> targets;
  std::vector<double> grid;                 // sorted, deduplicated
  std::vector<std::vector<double>> values;  // values[target_index][grid_index]
  std::vector<char> tie_ambiguous;          // per grid point

  struct Segment {
    double lo = 0.0;
    double hi = 0.0;
    // Per target; NaN when the segment holds fewer than two usable points.
    std::vector<double> slopes;
    std::vector<double> max_residuals;
  };
  std::vector<double> breakpoints;  // strictly inside (0, 1), sorted
  std::vector<Segment> segments;
};

SweepTable sweep_edge(const WeightedDigraph& g, PlayerId from, PlayerId to,
                      std::vector<PlayerId> targets, std::vector<double> grid,
                      ValueKind method);

// Structural test for a zero Shapley payoff: every in-edge of i has weight
// zero, and every out-neighbor of i either has i as its only in-neighbor
// or receives only zero-weight in-edges.
bool is_zero_shapley_player(const WeightedDigraph& g, PlayerId i);

}  // namespace trustgame
