#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "trustgame/coalition.hpp"
#include "trustgame/graph.hpp"

namespace trustgame {

// v(S) split into its internal (induced-subgraph sum) and external
// (bottleneck) components. per_player_external holds w_i(S) for exactly
// the members of S that have at least one in-neighbor outside S; a zero
// entry means an outside zero-weight edge pinned the minimum.
struct ValueBreakdown {
  double internal = 0.0;
  double external = 0.0;
  double total = 0.0;
  std::map<PlayerId, double> per_player_external;
};

ValueBreakdown coalition_value(const WeightedDigraph& g, const Coalition& s);

// w_i(S): 0 if i ∉ S, otherwise the minimum weight among i's in-edges from
// outside S (0 when every in-neighbor is inside S or i has none).
double external_player_value(const WeightedDigraph& g, const Coalition& s, PlayerId i);

struct PairViolation {
  Coalition s;
  Coalition t;
  double v_s = 0.0;
  double v_t = 0.0;
  double v_union = 0.0;  // superadditivity only
  double deficit = 0.0;  // positive amount by which the claim fails
};

struct CheckReport {
  std::string claim;
  std::uint64_t n_checked = 0;
  std::vector<PairViolation> violations;
  bool passed() const { return violations.empty(); }
};

inline constexpr int kDefaultPairCheckGuard = 12;

// Exhaustively tests v(S ∪ T) >= v(S) + v(T) over all disjoint nonempty
// pairs. Refuses above max_n instead of silently truncating.
CheckReport check_superadditive(const WeightedDigraph& g,
                                int max_n = kDefaultPairCheckGuard);

// Exhaustively tests v(S) <= v(T) over all proper inclusions S ⊂ T.
CheckReport check_monotone(const WeightedDigraph& g,
                           int max_n = kDefaultPairCheckGuard);

// Randomized variants for graphs above the exhaustive guard; the seed
// fully determines the sampled pairs.
CheckReport check_superadditive_sampled(const WeightedDigraph& g, int samples,
                                        std::uint64_t seed);
CheckReport check_monotone_sampled(const WeightedDigraph& g, int samples,
                                   std::uint64_t seed);

namespace detail {

// Hard cap for anything that materializes all 2^n coalition values.
inline constexpr int kHardEnumerationCap = 24;

// Direct evaluation of v on a bitmask coalition (requires n <= 63).
double coalition_value_mask(const WeightedDigraph& g, std::uint64_t mask);

// v over every subset, indexed by bitmask; size 2^n.
std::vector<double> value_table(const WeightedDigraph& g);

// Pair checkers over an arbitrary characteristic function given as a
// table; exposed so the reporting path is testable with crafted games.
CheckReport check_superadditive_table(int n, const std::vector<double>& v);
CheckReport check_monotone_table(int n, const std::vector<double>& v);

}  // namespace detail
}  // namespace trustgame
