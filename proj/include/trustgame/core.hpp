#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "trustgame/coalition.hpp"
#include "trustgame/graph.hpp"
#include "trustgame/values.hpp"

namespace trustgame {

struct CoreViolation {
  Coalition coalition;
  double value = 0.0;    // v(S)
  double payoff = 0.0;   // x(S)
  double deficit = 0.0;  // v(S) - x(S) > tol
};

// Result of checking an allocation against the core conditions.
// `is_unique_checked` is set when the per-player upper bounds
// c_i = v(N) - v(N \ {i}) were all found to coincide with the allocation,
// which pins it as the only possible core point.
struct CoreReport {
  Allocation allocation;
  bool efficiency_ok = false;
  double payoff_sum = 0.0;
  double grand_value = 0.0;
  bool membership_checked = false;
  std::uint64_t n_checked = 0;
  std::vector<CoreViolation> violations;
  bool is_unique_checked = false;
  std::optional<double> identity_lhs;  // sum_i v(N \ {i}) / (n-1), n >= 2
  std::optional<double> identity_rhs;  // v(N)

  bool in_core() const { return efficiency_ok && violations.empty(); }
};

// The core's single point: each player's total incoming weight.
Allocation core_allocation(const WeightedDigraph& g);

inline constexpr int kDefaultCoreGuard = 16;

// Exhaustive core membership of an arbitrary allocation: efficiency plus
// coalitional rationality x(S) >= v(S) for all S, one-sided at `tol`.
CoreReport is_in_core(const WeightedDigraph& g, const Allocation& x,
                      double tol = kTol, int max_n = kDefaultCoreGuard);

// Convenience for the canonical point: is_in_core(g, core_allocation(g)).
CoreReport core_report(const WeightedDigraph& g, double tol = kTol,
                       int max_n = kDefaultCoreGuard);

// Both sides of sum_i v(N \ {i}) / (n-1) = v(N), evaluated definitionally.
// Requires n >= 2.
std::pair<double, double> verify_core_identity(const WeightedDigraph& g);

// The constructive core point of the subgame on S: each member's incoming
// weight from inside S plus its minimum incoming weight from outside S.
// Payoffs are zero off S; coincides with core_allocation when S = N.
Allocation subgame_allocation(const WeightedDigraph& g, const Coalition& s);

struct SubgameViolation {
  Coalition s;  // the subgame
  Coalition t;  // the deviating coalition within it
  double value = 0.0;
  double payoff = 0.0;
  double deficit = 0.0;
};

struct TotalBalancednessReport {
  std::uint64_t n_checked = 0;
  std::vector<SubgameViolation> violations;
  bool passed() const { return violations.empty(); }
};

inline constexpr int kDefaultTotalBalancednessGuard = 10;

// For every nonempty S, checks that subgame_allocation(g, S) lies in the
// core of the subgame on S. Cost is ~3^n pair checks, hence the guard.
TotalBalancednessReport verify_total_balancedness(
    const WeightedDigraph& g, int max_n = kDefaultTotalBalancednessGuard);

}  // namespace trustgame
